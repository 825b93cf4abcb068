//! Exact Cartan calculus on a symplectic phase space, computed through a
//! graded Poisson bracket on the variables `φ^a, λ_a, c^a, c̄_a`, together
//! with an independent coordinate implementation of the same operations.
//!
//! ```
//! use gradedcartan::{Engine, SymplecticContext, textio};
//!
//! let engine = Engine::new(SymplecticContext::standard(1).unwrap());
//! let f = textio::parse_poly("phi1*phi2", 2).unwrap();
//! let df = engine.ext_d(&f).unwrap();
//! assert_eq!(textio::print_canonical(&df), "phi2*c1 + phi1*c2");
//! ```

pub mod epb;
pub mod error;
pub mod gen;
pub mod oracle;
pub mod scalar;
pub mod superalgebra;
pub mod symplectic;
pub mod textio;
pub mod verify;

pub use epb::{CalibrationConstants, ChargeSet, Engine, FlatCharge};
pub use error::{Error, Result};
pub use oracle::{DifferentialForm, Multivector, VectorValuedForm};
pub use scalar::Scalar;
pub use superalgebra::{Grade, Monomial, Parity, SuperPoly};
pub use symplectic::SymplecticContext;

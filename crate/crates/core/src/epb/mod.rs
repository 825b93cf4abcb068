//! The extended Poisson bracket on `(φ, λ, c, c̄)` and the Cartan calculus
//! expressed through it.

mod bracket;
mod brackets;
mod calibrate;
mod charges;
mod engine;
mod hat;

pub use bracket::epb;
pub use calibrate::{
    calibrate, calibrate_with, fn_battery, lie_battery, nr_battery, sn_battery, solve_constant, CalibrationConstants,
    Instance,
};
pub use charges::ChargeSet;
pub use engine::{BracketFn, Engine, FlatCharge};
pub use hat::{
    form_to_super, multivector_to_super, super_to_form, super_to_multivector, super_to_vector, super_to_vvform,
    vector_to_super, vvform_to_super,
};

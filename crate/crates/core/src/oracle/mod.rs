//! Coordinate implementations of the classical Cartan operations and the
//! graded brackets. Nothing here touches the graded Poisson bracket; these
//! are the reference values the bracket engine is checked against.

mod brackets;
mod ops;
mod tensor;

pub use brackets::{
    contraction, contraction_vv, fn_bracket, generalized_lie, interior as vector_interior, nr_bracket, sn_bracket,
    sn_lie_expansion, solve_fn_with, test_forms, Commutator, LieOperator,
};
pub use ops::{apply_vector, d, interior, lie_bracket, lie_form, lie_multivector, wedge_forms, wedge_multivectors};
pub use tensor::{ascending_tuples, sort_indices, DifferentialForm, Multivector, VectorValuedForm};

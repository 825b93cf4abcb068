use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::SuperPoly;

/// Extended Poisson bracket
///
/// `{A,B} = Σ_a (∂_{φ^a}A ∂_{λ_a}B − ∂_{λ_a}A ∂_{φ^a}B)
///        − i Σ_a (A∂⃖_{c^a} ∂⃗_{c̄_a}B + A∂⃖_{c̄_a} ∂⃗_{c^a}B)`
///
/// with right derivatives on `A` and left derivatives on `B`. It gives
/// `{φ^a, λ_b} = δ^a_b`, `{c^a, c̄_b} = −iδ^a_b` and is a graded Poisson
/// bracket on the whole algebra.
pub fn epb(a: &SuperPoly, b: &SuperPoly) -> Result<SuperPoly> {
    let dim = a.dim();
    if b.dim() != dim {
        return Err(Error::DimensionMismatch { left: dim, right: b.dim() });
    }
    let mut even = SuperPoly::zero(dim);
    let mut odd = SuperPoly::zero(dim);
    for k in 1..=dim {
        even = &even + &(&a.deriv_phi(k)? * &b.deriv_lambda(k)?);
        even = &even - &(&a.deriv_lambda(k)? * &b.deriv_phi(k)?);
        odd = &odd + &(&a.rderiv_c(k)? * &b.deriv_cbar(k)?);
        odd = &odd + &(&a.rderiv_cbar(k)? * &b.deriv_c(k)?);
    }
    Ok(&even + &odd.scale(&-Scalar::i()))
}

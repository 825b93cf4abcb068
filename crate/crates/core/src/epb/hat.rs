//! Encoding of forms, multivectors and vector-valued forms as Grassmann
//! polynomials, and strict decoding back.
//!
//! * `F = Σ_A F_A dφ^A` becomes `Σ_A F_A c^A`;
//! * `V = Σ_A V^A ∂_A` becomes `Σ_A V^A c̄_A`;
//! * `K = Σ_i Σ_A K^i_A dφ^A ⊗ ∂_i` becomes `Σ_i Σ_A K^i_A c̄_i c^A`;
//!
//! with `A` ascending, which is the `1/p!`-weighted full sum.

use crate::error::{Error, Result};
use crate::oracle::{DifferentialForm, Multivector, VectorValuedForm};
use crate::scalar::Scalar;
use crate::superalgebra::{mask_indices, sort_sign, SuperPoly};

fn mask(idx: &[usize]) -> u32 {
    sort_sign(idx).expect("ascending tuple").0
}

pub fn form_to_super(f: &DifferentialForm) -> SuperPoly {
    let mut out = SuperPoly::zero(f.dim());
    for (idx, coeff) in f.components() {
        out = &out + &coeff.times_grassmann(mask(idx), 0);
    }
    out
}

pub fn multivector_to_super(v: &Multivector) -> SuperPoly {
    let mut out = SuperPoly::zero(v.dim());
    for (idx, coeff) in v.components() {
        out = &out + &coeff.times_grassmann(0, mask(idx));
    }
    out
}

pub fn vvform_to_super(k: &VectorValuedForm) -> SuperPoly {
    let dim = k.dim();
    let mut out = SuperPoly::zero(dim);
    for (i, idx, coeff) in k.components() {
        let cb = SuperPoly::cbar(dim, i).expect("index in range");
        out = &out + &(&cb * &coeff.times_grassmann(mask(idx), 0));
    }
    out
}

fn decode_err(msg: impl Into<String>) -> Error {
    Error::DecodeFailure(msg.into())
}

/// Collects `(c-mask, c̄-mask) → coefficient` after checking that every
/// coefficient is a φ-polynomial.
fn grassmann_components(p: &SuperPoly) -> Result<Vec<(u32, u32, SuperPoly)>> {
    if !p.is_lambda_free() {
        return Err(decode_err("polynomial depends on lambda"));
    }
    Ok(p.grassmann_parts().into_iter().map(|(c, cb)| (c, cb, p.grassmann_coeff(c, cb))).collect())
}

/// Decodes a hatted form. With `degree = None` the degree is read off the
/// polynomial (the zero polynomial decodes to the zero function).
pub fn super_to_form(p: &SuperPoly, degree: Option<usize>) -> Result<DifferentialForm> {
    let comps = grassmann_components(p)?;
    let mut deg = degree;
    for (c, cb, _) in &comps {
        if *cb != 0 {
            return Err(decode_err("form contains cbar"));
        }
        let k = c.count_ones() as usize;
        match deg {
            None => deg = Some(k),
            Some(d) if d != k => {
                return Err(decode_err(format!("mixed form degrees {d} and {k}")));
            }
            _ => {}
        }
    }
    let deg = deg.unwrap_or(0);
    DifferentialForm::from_components(p.dim(), deg, comps.into_iter().map(|(c, _, v)| (mask_indices(c), v)))
}

pub fn super_to_multivector(p: &SuperPoly, degree: Option<usize>) -> Result<Multivector> {
    let comps = grassmann_components(p)?;
    let mut deg = degree;
    for (c, cb, _) in &comps {
        if *c != 0 {
            return Err(decode_err("multivector contains c"));
        }
        let k = cb.count_ones() as usize;
        match deg {
            None => deg = Some(k),
            Some(d) if d != k => {
                return Err(decode_err(format!("mixed multivector ranks {d} and {k}")));
            }
            _ => {}
        }
    }
    let deg = deg.unwrap_or(0);
    Multivector::from_components(p.dim(), deg, comps.into_iter().map(|(_, cb, v)| (mask_indices(cb), v)))
}

pub fn super_to_vvform(p: &SuperPoly, form_degree: Option<usize>) -> Result<VectorValuedForm> {
    let comps = grassmann_components(p)?;
    let mut deg = form_degree;
    for (c, cb, _) in &comps {
        if cb.count_ones() != 1 {
            return Err(decode_err("vector-valued form needs exactly one cbar per term"));
        }
        let k = c.count_ones() as usize;
        match deg {
            None => deg = Some(k),
            Some(d) if d != k => {
                return Err(decode_err(format!("mixed form degrees {d} and {k}")));
            }
            _ => {}
        }
    }
    let deg = deg.unwrap_or(0);
    // canonical order is c^A c̄_i, the encoding writes c̄_i c^A
    let sign = Scalar::sign(deg as i64);
    VectorValuedForm::from_components(
        p.dim(),
        deg,
        comps.into_iter().map(|(c, cb, v)| (mask_indices(cb)[0], mask_indices(c), v.scale(&sign))),
    )
}

/// Decodes a hatted vector field into its components.
pub fn super_to_vector(p: &SuperPoly) -> Result<Vec<SuperPoly>> {
    super_to_multivector(p, Some(1))?.vector_components()
}

pub fn vector_to_super(v: &[SuperPoly]) -> Result<SuperPoly> {
    Ok(multivector_to_super(&Multivector::vector(v)?))
}

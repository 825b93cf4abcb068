//! Lie, Schouten-Nijenhuis, Frölicher-Nijenhuis and Nijenhuis-Richardson
//! brackets computed with the graded Poisson bracket.
//!
//! The `*_raw` functions return the decoded bracket expression itself; the
//! plain methods multiply by the calibration constant.

use super::engine::Engine;
use super::hat::{multivector_to_super, super_to_form, super_to_multivector, super_to_vvform, vvform_to_super};
use crate::error::{Error, Result};
use crate::oracle::{Multivector, VectorValuedForm};
use crate::superalgebra::SuperPoly;

/// Splits a multivector into the coordinate decomposables
/// `(P^A ∂_{a_1}) ∧ ∂_{a_2} ∧ ⋯`, each as its list of vector fields.
fn decomposables(p: &Multivector) -> Vec<Vec<Vec<SuperPoly>>> {
    let dim = p.dim();
    p.components()
        .map(|(idx, coeff)| {
            idx.iter()
                .enumerate()
                .map(|(j, &a)| {
                    let mut v = vec![SuperPoly::zero(dim); dim];
                    v[a - 1] = if j == 0 { coeff.clone() } else { SuperPoly::one(dim) };
                    v
                })
                .collect()
        })
        .collect()
}

impl Engine {
    fn check_tensor_dim(&self, dim: usize) -> Result<()> {
        if dim == self.dim() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim(), right: dim })
        }
    }

    /// `{H̃_V, Ŵ}` decoded as a vector field.
    pub fn lie_bracket_raw(&self, v: &[SuperPoly], w: &[SuperPoly]) -> Result<Vec<SuperPoly>> {
        let hv = self.lie_hamiltonian(v)?;
        let hw = super::engine::hat_vector(w)?;
        let r = (self.bracket())(&hv, &hw)?;
        super_to_multivector(&r, Some(1))?.vector_components()
    }

    pub fn lie_bracket(&self, v: &[SuperPoly], w: &[SuperPoly]) -> Result<Vec<SuperPoly>> {
        let k = &self.constants()?.k_lie;
        Ok(self.lie_bracket_raw(v, w)?.iter().map(|x| x.scale(k)).collect())
    }

    /// `L_Q = Σ_j (−1)^{j−1} Ŷ_1 ⋯ (Ŷ_j omitted) ⋯ Ŷ_q H̃_{Y_j}` summed over
    /// the coordinate decomposables of `Q`. For a function `g` (rank 0)
    /// this is `{Q, ĝ}`.
    pub fn sn_generator(&self, q: &Multivector) -> Result<SuperPoly> {
        self.check_tensor_dim(q.dim())?;
        let dim = self.dim();
        if q.degree() == 0 {
            return (self.bracket())(&self.charges().q, &multivector_to_super(q));
        }
        let mut acc = SuperPoly::zero(dim);
        for ys in decomposables(q) {
            let hats = ys.iter().map(|y| super::engine::hat_vector(y)).collect::<Result<Vec<_>>>()?;
            for j in 0..ys.len() {
                let mut term = SuperPoly::one(dim);
                for (i, h) in hats.iter().enumerate() {
                    if i != j {
                        term = &term * h;
                    }
                }
                term = &term * &self.lie_hamiltonian(&ys[j])?;
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
        }
        Ok(acc)
    }

    /// `{P̂, L_Q}` decoded as a multivector of rank `p + q − 1`.
    pub fn sn_bracket_raw(&self, p: &Multivector, q: &Multivector) -> Result<Multivector> {
        self.check_tensor_dim(p.dim())?;
        let r = (self.bracket())(&multivector_to_super(p), &self.sn_generator(q)?)?;
        match (p.degree() + q.degree()).checked_sub(1) {
            Some(rank) => super_to_multivector(&r, Some(rank)),
            None if r.is_zero() => Ok(Multivector::zero(self.dim(), 0)),
            None => Err(Error::DecodeFailure("bracket of two functions is not zero".into())),
        }
    }

    pub fn sn_bracket(&self, p: &Multivector, q: &Multivector) -> Result<Multivector> {
        Ok(self.sn_bracket_raw(p, q)?.scale(&self.constants()?.k_sn))
    }

    /// With `X = {K̂, {Q, V̂}}` the bracket `{Q, X}` equals `{Q, Ŵ}` for a
    /// unique vector-valued form `W`, read off the `λ`-linear terms of
    /// `{Q, X}`. The identity is then checked in full.
    pub fn fn_bracket_raw(&self, k: &VectorValuedForm, v: &VectorValuedForm) -> Result<VectorValuedForm> {
        self.check_tensor_dim(k.dim())?;
        self.check_tensor_dim(v.dim())?;
        let dim = self.dim();
        let q = &self.charges().q;
        let x = (self.bracket())(&vvform_to_super(k), &(self.bracket())(q, &vvform_to_super(v))?)?;
        let y = (self.bracket())(q, &x)?;
        let degree = k.form_degree() + v.form_degree();

        // The λ_d-coefficient of {Q, Ŵ} is the hat of the form W^d.
        let mut parts = Vec::with_capacity(dim);
        for d in 1..=dim {
            let coeff =
                y.filter(|m| m.lambda_degree() == 1 && m.lambda_exp(d) == 1 && m.cbar_count() == 0).deriv_lambda(d)?;
            parts.push(super_to_form(&coeff, Some(degree))?);
        }
        let w = VectorValuedForm::from_parts(parts)?;
        if (self.bracket())(q, &vvform_to_super(&w))? != y {
            return Err(Error::DecodeFailure(
                "{Q, {K, {Q, V}}} is not the differential of a vector-valued form".into(),
            ));
        }
        Ok(w)
    }

    pub fn fn_bracket(&self, k: &VectorValuedForm, v: &VectorValuedForm) -> Result<VectorValuedForm> {
        Ok(self.fn_bracket_raw(k, v)?.scale(&self.constants()?.k_fn))
    }

    /// `{K̂, V̂}` decoded as a vector-valued form of degree `k + l + 1`.
    pub fn nr_bracket_raw(&self, k: &VectorValuedForm, v: &VectorValuedForm) -> Result<VectorValuedForm> {
        self.check_tensor_dim(k.dim())?;
        self.check_tensor_dim(v.dim())?;
        let Some(degree) = (k.form_degree() + v.form_degree()).checked_sub(1) else {
            return Err(Error::InvalidRank(
                "the Nijenhuis-Richardson bracket needs a total form degree of at least one".into(),
            ));
        };
        let r = (self.bracket())(&vvform_to_super(k), &vvform_to_super(v))?;
        super_to_vvform(&r, Some(degree))
    }

    pub fn nr_bracket(&self, k: &VectorValuedForm, v: &VectorValuedForm) -> Result<VectorValuedForm> {
        Ok(self.nr_bracket_raw(k, v)?.scale(&self.constants()?.k_nr))
    }
}

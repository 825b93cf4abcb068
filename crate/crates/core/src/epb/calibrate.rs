//! Fixes the four bracket proportionality constants by matching the
//! bracket engine against the coordinate definitions on a fixed battery.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bracket::epb;
use super::engine::{BracketFn, Engine};
use super::hat::{multivector_to_super, vector_to_super, vvform_to_super};
use crate::error::{Error, Result};
use crate::gen;
use crate::oracle::{self, Multivector, VectorValuedForm};
use crate::scalar::Scalar;
use crate::superalgebra::SuperPoly;
use crate::symplectic::SymplecticContext;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CalibrationConstants {
    pub k_lie: Scalar,
    pub k_sn: Scalar,
    pub k_fn: Scalar,
    pub k_nr: Scalar,
}

impl CalibrationConstants {
    pub fn named(&self) -> [(&'static str, &Scalar); 4] {
        [("lie", &self.k_lie), ("sn", &self.k_sn), ("fn", &self.k_fn), ("nr", &self.k_nr)]
    }
}

/// Random instances per dimension and bracket.
const PER_DIM: usize = 7;
const SEED: u64 = 0x5eed_ca11;

/// One battery entry: the oracle value and the bracket-engine value, both
/// hat-encoded so they compare as polynomials.
pub struct Instance {
    pub oracle: SuperPoly,
    pub engine: SuperPoly,
}

/// The unique scalar `k` with `oracle = k · engine` on every instance.
pub fn solve_constant(bracket: &'static str, battery: &[Instance]) -> Result<Scalar> {
    let fail = |detail: String| Error::InconsistentCalibration { bracket, detail };
    let mut k: Option<Scalar> = None;
    for (n, inst) in battery.iter().enumerate() {
        if let Some((m, e)) = inst.engine.terms().next() {
            let o = inst.oracle.coeff(m);
            k = Some(&o / e);
            break;
        } else if !inst.oracle.is_zero() {
            return Err(fail(format!("instance {n}: engine value is zero but the oracle is not")));
        }
    }
    let k = k.ok_or_else(|| fail("every instance is zero; the constant is undetermined".into()))?;
    if k.is_zero() {
        return Err(fail("the constant would be zero".into()));
    }
    for (n, inst) in battery.iter().enumerate() {
        if inst.engine.scale(&k) != inst.oracle {
            return Err(fail(format!("instance {n} needs a different constant than {k}")));
        }
    }
    Ok(k)
}

fn contexts(ctx: &SymplecticContext) -> Vec<SymplecticContext> {
    let mut out = vec![SymplecticContext::standard(1).expect("n = 1"), SymplecticContext::standard(2).expect("n = 2")];
    if !out.contains(ctx) && ctx.n() <= 2 {
        out.push(ctx.clone());
    }
    out
}

pub fn lie_battery(ctx: &SymplecticContext, bracket: BracketFn) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for c in contexts(ctx) {
        let dim = c.dim();
        let engine = Engine::new(c).with_bracket(bracket);
        let mut pairs = Vec::new();
        let phi1 = SuperPoly::phi(dim, 1)?;
        let e1 = |x: SuperPoly| {
            let mut v = vec![SuperPoly::zero(dim); dim];
            v[0] = x;
            v
        };
        pairs.push((e1(phi1), e1(SuperPoly::one(dim))));
        let mut r = ChaCha8Rng::seed_from_u64(SEED ^ dim as u64);
        for _ in 0..PER_DIM {
            pairs.push((gen::vector_field(&mut r, dim, 2), gen::vector_field(&mut r, dim, 2)));
        }
        for (v, w) in pairs {
            out.push(Instance {
                oracle: vector_to_super(&oracle::lie_bracket(&v, &w)?)?,
                engine: vector_to_super(&engine.lie_bracket_raw(&v, &w)?)?,
            });
        }
    }
    Ok(out)
}

pub fn sn_battery(ctx: &SymplecticContext, bracket: BracketFn) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for c in contexts(ctx) {
        let dim = c.dim();
        let engine = Engine::new(c).with_bracket(bracket);
        let mut pairs: Vec<(Multivector, Multivector)> = Vec::new();
        let one = SuperPoly::one(dim);
        pairs.push((
            Multivector::from_components(dim, 2, [(vec![1, 2], one.clone())])?,
            Multivector::from_components(dim, 1, [(vec![1], SuperPoly::phi(dim, 1)?)])?,
        ));
        let mut r = ChaCha8Rng::seed_from_u64(SEED.wrapping_add(dim as u64));
        for _ in 0..PER_DIM {
            let p = r.gen_range(0..=dim.min(3));
            let q = r.gen_range(0..=dim.min(3));
            pairs.push((gen::multivector(&mut r, dim, p, 2), gen::multivector(&mut r, dim, q, 2)));
        }
        for (p, q) in pairs {
            out.push(Instance {
                oracle: multivector_to_super(&oracle::sn_bracket(&p, &q)?),
                engine: multivector_to_super(&engine.sn_bracket_raw(&p, &q)?),
            });
        }
    }
    Ok(out)
}

fn vv_pairs(dim: usize, seed: u64, min_total: usize) -> Vec<(VectorValuedForm, VectorValuedForm)> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = vec![(VectorValuedForm::identity(dim), VectorValuedForm::identity(dim))];
    while pairs.len() < PER_DIM + 1 {
        let k = r.gen_range(0..=2.min(dim));
        let l = r.gen_range(0..=2.min(dim));
        if k + l < min_total {
            continue;
        }
        pairs.push((gen::sparse_vv_form(&mut r, dim, k, 2, 3), gen::sparse_vv_form(&mut r, dim, l, 2, 3)));
    }
    pairs
}

pub fn fn_battery(ctx: &SymplecticContext, bracket: BracketFn) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for c in contexts(ctx) {
        let dim = c.dim();
        let engine = Engine::new(c).with_bracket(bracket);
        for (k, v) in vv_pairs(dim, SEED ^ 0xf0 ^ dim as u64, 0) {
            out.push(Instance {
                oracle: vvform_to_super(&oracle::fn_bracket(&k, &v)?),
                engine: vvform_to_super(&engine.fn_bracket_raw(&k, &v)?),
            });
        }
    }
    Ok(out)
}

pub fn nr_battery(ctx: &SymplecticContext, bracket: BracketFn) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for c in contexts(ctx) {
        let dim = c.dim();
        let engine = Engine::new(c).with_bracket(bracket);
        for (k, v) in vv_pairs(dim, SEED ^ 0x0f ^ dim as u64, 1) {
            out.push(Instance {
                oracle: vvform_to_super(&oracle::nr_bracket(&k, &v)?),
                engine: vvform_to_super(&engine.nr_bracket_raw(&k, &v)?),
            });
        }
    }
    Ok(out)
}

/// Runs every battery and returns the constants, or
/// [`Error::InconsistentCalibration`] if some bracket admits no single one.
pub fn calibrate(ctx: &SymplecticContext) -> Result<CalibrationConstants> {
    calibrate_with(ctx, epb)
}

/// [`calibrate`] for an engine built on another bracket.
pub fn calibrate_with(ctx: &SymplecticContext, bracket: BracketFn) -> Result<CalibrationConstants> {
    Ok(CalibrationConstants {
        k_lie: solve_constant("lie", &lie_battery(ctx, bracket)?)?,
        k_sn: solve_constant("sn", &sn_battery(ctx, bracket)?)?,
        k_fn: solve_constant("fn", &fn_battery(ctx, bracket)?)?,
        k_nr: solve_constant("nr", &nr_battery(ctx, bracket)?)?,
    })
}

//! Classical definitions of the Schouten-Nijenhuis, Frölicher-Nijenhuis and
//! Nijenhuis-Richardson brackets, evaluated in coordinates.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::ops::{self, d, lie_multivector, wedge_multivectors};
use super::tensor::{ascending_tuples, DifferentialForm, Multivector, VectorValuedForm};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::SuperPoly;

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * BigInt::from(k))
}

fn perm_is_odd(p: &[usize]) -> bool {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// Splits a multivector into decomposables `Y_1 ∧ ⋯ ∧ Y_q` with
/// `Y_1 = P^A ∂_{a_1}` and `Y_j = ∂_{a_j}` for `j > 1`.
fn decompose(q: &Multivector) -> Vec<Vec<Vec<SuperPoly>>> {
    let dim = q.dim();
    let unit = |a: usize, coeff: SuperPoly| {
        let mut v = vec![SuperPoly::zero(dim); dim];
        v[a - 1] = coeff;
        v
    };
    q.components()
        .map(|(idx, coeff)| {
            idx.iter()
                .enumerate()
                .map(|(j, &a)| if j == 0 { unit(a, coeff.clone()) } else { unit(a, SuperPoly::one(dim)) })
                .collect()
        })
        .collect()
}

fn wedge_vectors(dim: usize, vs: &[&Vec<SuperPoly>]) -> Result<Multivector> {
    let mut acc = Multivector::from_components(dim, 0, [(vec![], SuperPoly::one(dim))])?;
    for v in vs {
        acc = wedge_multivectors(&acc, &Multivector::vector(v)?)?;
    }
    Ok(acc)
}

/// `Σ_j (-1)^{j+1} Y_1 ∧ ⋯ Ŷ_j ⋯ ∧ Y_q ∧ L_{Y_j} P`, summed over the
/// coordinate decomposition of `q`. Requires `q` of rank at least one.
pub fn sn_lie_expansion(p: &Multivector, q: &Multivector) -> Result<Multivector> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { left: p.dim(), right: q.dim() });
    }
    if q.degree() == 0 {
        return Err(Error::InvalidRank("expansion needs a rank >= 1 right argument".into()));
    }
    let dim = p.dim();
    let mut acc = Multivector::zero(dim, p.degree() + q.degree() - 1);
    for ys in decompose(q) {
        for j in 0..ys.len() {
            let others: Vec<&Vec<SuperPoly>> = ys.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, y)| y).collect();
            let term = wedge_multivectors(&wedge_vectors(dim, &others)?, &lie_multivector(&ys[j], p)?)?;
            // j is 0-based here, so (-1)^{(j+1)+1} = (-1)^j
            acc = if j % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
    }
    Ok(acc)
}

/// Schouten-Nijenhuis bracket, normalized so that it is graded
/// antisymmetric, `[P,Q] = -(-1)^{(p-1)(q-1)} [Q,P]`, and reduces to the Lie
/// bracket on vector fields and to `[X, f] = X(f)` on functions.
pub fn sn_bracket(p: &Multivector, q: &Multivector) -> Result<Multivector> {
    let (pd, qd) = (p.degree() as i64, q.degree() as i64);
    if qd == 0 {
        if pd == 0 {
            return Ok(Multivector::zero(p.dim(), 0));
        }
        return Ok(sn_bracket(q, p)?.scale(&Scalar::sign(pd)));
    }
    let expansion = sn_lie_expansion(p, q)?;
    Ok(expansion.scale(&-Scalar::sign(pd * (qd + 1))))
}

/// Generalized contraction of an `l`-form with a vector-valued
/// `(k+1)`-form, by explicit summation over `S_{k+l}`:
///
/// `(i_K Θ)(X_1…X_{k+l}) = 1/((k+1)!(l-1)!) Σ_σ sign σ Θ(K(X_σ1…X_σ(k+1)), X_σ(k+2)…)`.
pub fn contraction(k: &VectorValuedForm, theta: &DifferentialForm) -> Result<DifferentialForm> {
    if k.dim() != theta.dim() {
        return Err(Error::DimensionMismatch { left: k.dim(), right: theta.dim() });
    }
    let dim = theta.dim();
    let l = theta.degree();
    let kd = k.form_degree();
    if l == 0 {
        return Ok(DifferentialForm::zero(dim, kd.saturating_sub(1)));
    }
    let m = kd + l - 1;
    let norm = BigRational::new(BigInt::from(1), factorial(kd) * factorial(l - 1));
    let norm = Scalar::real(norm);
    let perms: Vec<(Vec<usize>, bool)> = (0..m)
        .permutations(m)
        .map(|p| {
            let odd = perm_is_odd(&p);
            (p, odd)
        })
        .collect();
    let mut comps = Vec::new();
    for a in ascending_tuples(dim, m) {
        let mut acc = SuperPoly::zero(dim);
        for (perm, odd) in &perms {
            let args: Vec<usize> = perm.iter().map(|&i| a[i]).collect();
            let (k_args, rest) = args.split_at(kd);
            for i in 1..=dim {
                let kc = k.get(i, k_args);
                if kc.is_zero() {
                    continue;
                }
                let mut t_args = vec![i];
                t_args.extend_from_slice(rest);
                let term = &kc * &theta.get(&t_args);
                acc = if *odd { &acc - &term } else { &acc + &term };
            }
        }
        comps.push((a, acc.scale(&norm)));
    }
    DifferentialForm::from_components(dim, m, comps)
}

/// `i_K V`, acting on the form part of `V` and carrying its vector index.
pub fn contraction_vv(k: &VectorValuedForm, v: &VectorValuedForm) -> Result<VectorValuedForm> {
    let parts = v.parts().iter().map(|p| contraction(k, p)).collect::<Result<Vec<_>>>()?;
    VectorValuedForm::from_parts(parts)
}

/// Graded Lie derivative along a vector-valued form,
/// `L_K = i_K d - (-1)^k d i_K` for `K` of form degree `k+1`.
pub fn generalized_lie(k: &VectorValuedForm, theta: &DifferentialForm) -> Result<DifferentialForm> {
    let a = contraction(k, &d(theta))?;
    if theta.degree() == 0 {
        return Ok(a);
    }
    let b = d(&contraction(k, theta)?);
    // (-1)^k with k = form_degree - 1
    let kk = k.form_degree() as i64 - 1;
    if kk.rem_euclid(2) == 0 {
        a.sub(&b)
    } else {
        a.add(&b)
    }
}

/// Operator `Θ ↦ L_Θ` parameterized by a vector-valued form, as used by the
/// implicit Frölicher-Nijenhuis definition.
pub type LieOperator = dyn Fn(&VectorValuedForm, &DifferentialForm) -> Result<DifferentialForm>;

/// Monomial test forms `m(φ) dφ^A` over every degree, with `m` ranging over
/// `1`, the coordinates, and (for small dimensions) their pairwise products.
pub fn test_forms(dim: usize) -> Vec<DifferentialForm> {
    let mut multipliers = vec![SuperPoly::one(dim)];
    for a in 1..=dim {
        multipliers.push(SuperPoly::phi(dim, a).expect("index in range"));
    }
    if dim <= 2 {
        for a in 1..=dim {
            for b in a..=dim {
                multipliers.push(&multipliers[a] * &multipliers[b]);
            }
        }
    }
    let mut out = Vec::new();
    for p in 0..=dim {
        for idx in ascending_tuples(dim, p) {
            for m in &multipliers {
                out.push(
                    DifferentialForm::from_components(dim, p, [(idx.clone(), m.clone())]).expect("valid test form"),
                );
            }
        }
    }
    out
}

/// Which commutator of Lie operators defines the bracket.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Commutator {
    /// `L_K L_V - (-1)^{(k+1)(l+1)} L_V L_K`
    Graded,
    /// `L_K L_V - L_V L_K`
    Plain,
}

/// Solves `L_W Θ = [L_K, L_V] Θ` for `W` using the supplied Lie operator
/// and commutator. `W` is read off the coordinate functions, where
/// `L_W φ^j = W^j`; the relation is then checked on every test form.
pub fn solve_fn_with(
    lie: &LieOperator,
    commutator: Commutator,
    k: &VectorValuedForm,
    v: &VectorValuedForm,
) -> Result<VectorValuedForm> {
    if k.dim() != v.dim() {
        return Err(Error::DimensionMismatch { left: k.dim(), right: v.dim() });
    }
    let dim = k.dim();
    let out_degree = k.form_degree() + v.form_degree();
    let sign = match commutator {
        Commutator::Graded => Scalar::sign((k.form_degree() * v.form_degree()) as i64),
        Commutator::Plain => Scalar::one(),
    };
    let commutator = |theta: &DifferentialForm| -> Result<DifferentialForm> {
        let kv = lie(k, &lie(v, theta)?)?;
        let vk = lie(v, &lie(k, theta)?)?;
        kv.sub(&vk.scale(&sign))
    };

    check_injective(lie, dim, out_degree)?;

    let mut parts = Vec::with_capacity(dim);
    for j in 1..=dim {
        let coord = DifferentialForm::function(SuperPoly::phi(dim, j)?)?;
        parts.push(commutator(&coord)?);
    }
    let w = VectorValuedForm::from_parts(parts)?;

    for theta in test_forms(dim) {
        let lhs = lie(&w, &theta)?;
        let rhs = commutator(&theta)?;
        if lhs != rhs {
            return Err(Error::NoSolution(format!("relation fails on a degree-{} test form", theta.degree())));
        }
    }
    Ok(w)
}

/// `W ↦ (L_W φ^j)_j` must be the identity on basis elements for the read-off
/// in [`solve_fn_with`] to determine `W` uniquely.
fn check_injective(lie: &LieOperator, dim: usize, degree: usize) -> Result<()> {
    for i in 1..=dim {
        for idx in ascending_tuples(dim, degree) {
            let e = VectorValuedForm::from_components(dim, degree, [(i, idx.clone(), SuperPoly::one(dim))])?;
            for j in 1..=dim {
                let coord = DifferentialForm::function(SuperPoly::phi(dim, j)?)?;
                let got = lie(&e, &coord)?;
                let want = if i == j { e.part(i).clone() } else { DifferentialForm::zero(dim, degree) };
                if got != want {
                    return Err(Error::NonUniqueSolution(format!(
                        "basis element ({i}; {idx:?}) is not recovered from coordinate functions"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Frölicher-Nijenhuis bracket from its defining relation
/// `[L_K, L_V] = L_{[K,V]}` with graded commutator.
pub fn fn_bracket(k: &VectorValuedForm, v: &VectorValuedForm) -> Result<VectorValuedForm> {
    solve_fn_with(&generalized_lie, Commutator::Graded, k, v)
}

/// Nijenhuis-Richardson bracket `i_K V - (-1)^{kl} i_V K`.
pub fn nr_bracket(k: &VectorValuedForm, v: &VectorValuedForm) -> Result<VectorValuedForm> {
    if k.form_degree() + v.form_degree() == 0 {
        return Err(Error::InvalidRank(
            "the Nijenhuis-Richardson bracket needs a total form degree of at least one".into(),
        ));
    }
    let kk = k.form_degree() as i64 - 1;
    let ll = v.form_degree() as i64 - 1;
    let a = contraction_vv(k, v)?;
    let b = contraction_vv(v, k)?;
    a.sub(&b.scale(&Scalar::sign(kk * ll)))
}

/// Ordinary interior product of a vector field, for reductions.
pub fn interior(v: &Multivector, theta: &DifferentialForm) -> Result<DifferentialForm> {
    ops::interior(&v.vector_components()?, theta)
}

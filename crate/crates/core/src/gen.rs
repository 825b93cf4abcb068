//! Seeded random generators for polynomials and tensors, shared by the
//! property tests and the `verify` suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::oracle::{ascending_tuples, DifferentialForm, Multivector, VectorValuedForm};
use crate::scalar::Scalar;
use crate::superalgebra::{Monomial, SuperPoly};

/// Size limits for random polynomials.
#[derive(Clone, Copy, Debug)]
pub struct PolyShape {
    pub max_terms: usize,
    pub max_phi_degree: u32,
    pub max_lambda_degree: u32,
    /// Largest number of odd factors in one monomial.
    pub max_grassmann: usize,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape { max_terms: 4, max_phi_degree: 3, max_lambda_degree: 1, max_grassmann: 3 }
    }
}

/// Small nonzero Gaussian rational.
pub fn scalar<R: Rng>(r: &mut R) -> Scalar {
    let num = loop {
        let v = r.gen_range(-4i64..=4);
        if v != 0 {
            break v;
        }
    };
    let den = *[1i64, 1, 1, 2, 3].choose(r).unwrap();
    let re = Scalar::from_ratio(num, den);
    if r.gen_bool(0.2) {
        &re * &Scalar::i()
    } else if r.gen_bool(0.15) {
        &re + &Scalar::i()
    } else {
        re
    }
}

/// Small nonzero real rational.
pub fn real_scalar<R: Rng>(r: &mut R) -> Scalar {
    loop {
        let v = r.gen_range(-3i64..=3);
        if v != 0 {
            let den = *[1i64, 1, 2].choose(r).unwrap();
            return Scalar::from_ratio(v, den);
        }
    }
}

fn random_exponents<R: Rng>(r: &mut R, dim: usize, max_total: u32) -> Vec<u32> {
    let mut e = vec![0u32; dim];
    let total = r.gen_range(0..=max_total);
    for _ in 0..total {
        e[r.gen_range(0..dim)] += 1;
    }
    e
}

fn random_mask<R: Rng>(r: &mut R, dim: usize, count: usize) -> u32 {
    let mut idx: Vec<usize> = (0..dim).collect();
    idx.shuffle(r);
    idx.iter().take(count.min(dim)).fold(0u32, |m, &i| m | (1 << i))
}

/// Random monomial whose Grassmann factor count is `odd_count`.
fn monomial_with<R: Rng>(r: &mut R, dim: usize, shape: &PolyShape, odd_count: usize) -> Monomial {
    let mut m = Monomial::one(dim);
    m.phi = random_exponents(r, dim, shape.max_phi_degree);
    m.lambda = random_exponents(r, dim, shape.max_lambda_degree);
    let nc = r.gen_range(0..=odd_count.min(dim));
    let nb = (odd_count - nc).min(dim);
    m.c = random_mask(r, dim, nc);
    m.cbar = random_mask(r, dim, nb);
    m
}

/// Polynomial with terms of arbitrary (mixed) grade.
pub fn super_poly<R: Rng>(r: &mut R, dim: usize, shape: &PolyShape) -> SuperPoly {
    let mut p = SuperPoly::zero(dim);
    for _ in 0..r.gen_range(1..=shape.max_terms) {
        let k = r.gen_range(0..=shape.max_grassmann);
        let m = monomial_with(r, dim, shape, k);
        p = &p + &SuperPoly::from_term(m, scalar(r));
    }
    p
}

/// Polynomial whose terms all share one parity.
pub fn homogeneous_poly<R: Rng>(r: &mut R, dim: usize, shape: &PolyShape) -> SuperPoly {
    let odd = r.gen_bool(0.5);
    let mut p = SuperPoly::zero(dim);
    for _ in 0..r.gen_range(1..=shape.max_terms) {
        let mut k = r.gen_range(0..=shape.max_grassmann);
        if (k % 2 == 1) != odd {
            k = if k == 0 { 1 } else { k - 1 };
        }
        let m = monomial_with(r, dim, shape, k);
        if m.is_odd() == odd {
            p = &p + &SuperPoly::from_term(m, scalar(r));
        }
    }
    p
}

pub fn monomial_poly<R: Rng>(r: &mut R, dim: usize, shape: &PolyShape) -> SuperPoly {
    let k = r.gen_range(0..=shape.max_grassmann);
    SuperPoly::from_term(monomial_with(r, dim, shape, k), scalar(r))
}

/// A single generator or scalar, for building products factor by factor.
#[derive(Clone, Debug)]
pub enum Generator {
    Phi(usize),
    Lambda(usize),
    C(usize),
    Cbar(usize),
    Scalar(Scalar),
}

impl Generator {
    pub fn poly(&self, dim: usize) -> SuperPoly {
        match self {
            Generator::Phi(a) => SuperPoly::phi(dim, *a).expect("valid index"),
            Generator::Lambda(a) => SuperPoly::lambda(dim, *a).expect("valid index"),
            Generator::C(a) => SuperPoly::c(dim, *a).expect("valid index"),
            Generator::Cbar(a) => SuperPoly::cbar(dim, *a).expect("valid index"),
            Generator::Scalar(s) => SuperPoly::constant(dim, s.clone()),
        }
    }
}

pub fn generator_word<R: Rng>(r: &mut R, dim: usize, len: usize) -> Vec<Generator> {
    (0..len)
        .map(|_| {
            let a = r.gen_range(1..=dim);
            match r.gen_range(0..5) {
                0 => Generator::Phi(a),
                1 => Generator::Lambda(a),
                2 => Generator::C(a),
                3 => Generator::Cbar(a),
                _ => Generator::Scalar(scalar(r)),
            }
        })
        .collect()
}

/// φ-only polynomial of total degree at most `max_degree`.
pub fn phi_poly<R: Rng>(r: &mut R, dim: usize, max_degree: u32, max_terms: usize) -> SuperPoly {
    let mut p = SuperPoly::zero(dim);
    for _ in 0..r.gen_range(1..=max_terms) {
        let mut m = Monomial::one(dim);
        m.phi = random_exponents(r, dim, max_degree);
        p = &p + &SuperPoly::from_term(m, real_scalar(r));
    }
    p
}

/// Like [`phi_poly`] but with at least one nonconstant term.
pub fn hamiltonian<R: Rng>(r: &mut R, dim: usize, max_degree: u32) -> SuperPoly {
    loop {
        let h = phi_poly(r, dim, max_degree, 4);
        if h.max_phi_degree() >= 1 {
            return h;
        }
    }
}

/// Random coefficient: zero with some probability, else a φ-polynomial.
fn coefficient<R: Rng>(r: &mut R, dim: usize, max_degree: u32) -> SuperPoly {
    if r.gen_bool(0.3) {
        SuperPoly::zero(dim)
    } else {
        phi_poly(r, dim, max_degree, 2)
    }
}

pub fn vector_field<R: Rng>(r: &mut R, dim: usize, max_degree: u32) -> Vec<SuperPoly> {
    (0..dim).map(|_| coefficient(r, dim, max_degree)).collect()
}

pub fn form<R: Rng>(r: &mut R, dim: usize, degree: usize, max_degree: u32) -> DifferentialForm {
    let comps: Vec<_> =
        ascending_tuples(dim, degree).into_iter().map(|idx| (idx, coefficient(r, dim, max_degree))).collect();
    DifferentialForm::from_components(dim, degree, comps).expect("valid form")
}

pub fn multivector<R: Rng>(r: &mut R, dim: usize, degree: usize, max_degree: u32) -> Multivector {
    let comps: Vec<_> =
        ascending_tuples(dim, degree).into_iter().map(|idx| (idx, coefficient(r, dim, max_degree))).collect();
    Multivector::from_components(dim, degree, comps).expect("valid multivector")
}

/// Wedge product of `degree` random vector fields with sparse coefficients.
pub fn decomposable_multivector<R: Rng>(r: &mut R, dim: usize, degree: usize, max_degree: u32) -> Multivector {
    let mut acc = Multivector::from_components(dim, 0, [(vec![], SuperPoly::one(dim))]).expect("unit");
    for _ in 0..degree {
        let v = Multivector::vector(&vector_field(r, dim, max_degree)).expect("vector");
        acc = crate::oracle::wedge_multivectors(&acc, &v).expect("same dimension");
    }
    acc
}

pub fn vv_form<R: Rng>(r: &mut R, dim: usize, form_degree: usize, max_degree: u32) -> VectorValuedForm {
    let parts = (0..dim).map(|_| form(r, dim, form_degree, max_degree)).collect();
    VectorValuedForm::from_parts(parts).expect("valid vector-valued form")
}

/// A sparse vector-valued form with at most `max_terms` nonzero components.
pub fn sparse_vv_form<R: Rng>(
    r: &mut R,
    dim: usize,
    form_degree: usize,
    max_degree: u32,
    max_terms: usize,
) -> VectorValuedForm {
    let tuples = ascending_tuples(dim, form_degree);
    let mut out = VectorValuedForm::zero(dim, form_degree);
    if tuples.is_empty() {
        return out;
    }
    for _ in 0..r.gen_range(1..=max_terms) {
        let i = r.gen_range(1..=dim);
        let idx = tuples.choose(r).unwrap();
        out.add_component(i, idx, &phi_poly(r, dim, max_degree, 2)).expect("valid component");
    }
    out
}

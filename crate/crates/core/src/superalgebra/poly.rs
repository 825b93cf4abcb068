use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::One;

use super::monomial::{bit, indices, merge_inversions, Monomial, MAX_DIM};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn as_int(self) -> i64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
}

/// Homogeneous grade of a polynomial. `None` marks a mixed component.
/// The zero polynomial reports `(Even, 0)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Grade {
    pub parity: Option<Parity>,
    pub ghost: Option<i32>,
}

/// Canonical element of the graded-commutative algebra generated by the
/// even `φ^a, λ_a` and the odd `c^a, c̄_a`, with Gaussian-rational
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SuperPoly {
    dim: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(Error::UnsupportedDimension(dim))
    } else {
        Ok(())
    }
}

fn check_index(index: usize, dim: usize) -> Result<()> {
    if index == 0 || index > dim {
        Err(Error::IndexOutOfRange { index, dim })
    } else {
        Ok(())
    }
}

impl SuperPoly {
    pub fn zero(dim: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "unsupported dimension {dim}");
        SuperPoly { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, value: Scalar) -> Self {
        SuperPoly::from_term(Monomial::one(dim), value)
    }

    pub fn one(dim: usize) -> Self {
        SuperPoly::constant(dim, Scalar::one())
    }

    pub fn from_term(mono: Monomial, coeff: Scalar) -> Self {
        let mut p = SuperPoly::zero(mono.dim());
        p.add_term(mono, coeff);
        p
    }

    pub fn phi(dim: usize, a: usize) -> Result<Self> {
        check_dim(dim)?;
        check_index(a, dim)?;
        let mut m = Monomial::one(dim);
        m.phi[a - 1] = 1;
        Ok(SuperPoly::from_term(m, Scalar::one()))
    }

    pub fn lambda(dim: usize, a: usize) -> Result<Self> {
        check_dim(dim)?;
        check_index(a, dim)?;
        let mut m = Monomial::one(dim);
        m.lambda[a - 1] = 1;
        Ok(SuperPoly::from_term(m, Scalar::one()))
    }

    pub fn c(dim: usize, a: usize) -> Result<Self> {
        check_dim(dim)?;
        check_index(a, dim)?;
        let mut m = Monomial::one(dim);
        m.c = bit(a);
        Ok(SuperPoly::from_term(m, Scalar::one()))
    }

    pub fn cbar(dim: usize, a: usize) -> Result<Self> {
        check_dim(dim)?;
        check_index(a, dim)?;
        let mut m = Monomial::one(dim);
        m.cbar = bit(a);
        Ok(SuperPoly::from_term(m, Scalar::one()))
    }

    /// Ordered product `c^{a_1} ⋯ c^{a_k}` as written (the reordering sign is
    /// absorbed into the coefficient). Repeated indices give zero.
    pub fn c_product(dim: usize, idx: &[usize]) -> Result<Self> {
        let mut p = SuperPoly::one(dim);
        for &a in idx {
            p = p.checked_mul(&SuperPoly::c(dim, a)?)?;
        }
        Ok(p)
    }

    pub fn cbar_product(dim: usize, idx: &[usize]) -> Result<Self> {
        let mut p = SuperPoly::one(dim);
        for &a in idx {
            p = p.checked_mul(&SuperPoly::cbar(dim, a)?)?;
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// The coefficient of the unit monomial.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one(self.dim))
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_dim(&self, other: &SuperPoly) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.dim, right: other.dim })
        }
    }

    pub fn checked_add(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_term(m.clone(), s.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (m, s) in &other.terms {
            out.add_term(m.clone(), -s);
        }
        Ok(out)
    }

    /// Graded-commutative product.
    pub fn checked_mul(&self, other: &SuperPoly) -> Result<SuperPoly> {
        self.same_dim(other)?;
        let mut out = SuperPoly::zero(self.dim);
        for (ma, sa) in &self.terms {
            for (mb, sb) in &other.terms {
                if let Some((m, flip)) = ma.mul(mb) {
                    let s = sa * sb;
                    out.add_term(m, if flip { -s } else { s });
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> SuperPoly {
        if s.is_zero() {
            return SuperPoly::zero(self.dim);
        }
        SuperPoly { dim: self.dim, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn pow(&self, e: u32) -> SuperPoly {
        let mut out = SuperPoly::one(self.dim);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Keeps the terms accepted by `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Monomial) -> bool) -> SuperPoly {
        SuperPoly {
            dim: self.dim,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, s)| (m.clone(), s.clone())).collect(),
        }
    }

    pub fn deriv_phi(&self, a: usize) -> Result<SuperPoly> {
        check_index(a, self.dim)?;
        let mut out = SuperPoly::zero(self.dim);
        for (m, s) in &self.terms {
            let e = m.phi[a - 1];
            if e > 0 {
                let mut m2 = m.clone();
                m2.phi[a - 1] -= 1;
                out.add_term(m2, s * &Scalar::from_int(e as i64));
            }
        }
        Ok(out)
    }

    pub fn deriv_lambda(&self, a: usize) -> Result<SuperPoly> {
        check_index(a, self.dim)?;
        let mut out = SuperPoly::zero(self.dim);
        for (m, s) in &self.terms {
            let e = m.lambda[a - 1];
            if e > 0 {
                let mut m2 = m.clone();
                m2.lambda[a - 1] -= 1;
                out.add_term(m2, s * &Scalar::from_int(e as i64));
            }
        }
        Ok(out)
    }

    /// Left derivative `∂/∂c^a`: move `c^a` to the front, then strike it.
    pub fn deriv_c(&self, a: usize) -> Result<SuperPoly> {
        check_index(a, self.dim)?;
        Ok(self.strike(a, |m, b| ((m.c & b) != 0).then(|| (m.c & (b - 1)).count_ones()), true))
    }

    /// Left derivative `∂/∂c̄_a`.
    pub fn deriv_cbar(&self, a: usize) -> Result<SuperPoly> {
        check_index(a, self.dim)?;
        Ok(self.strike(
            a,
            |m, b| ((m.cbar & b) != 0).then(|| m.c.count_ones() + (m.cbar & (b - 1)).count_ones()),
            false,
        ))
    }

    /// Right derivative `←∂/∂c^a`: move `c^a` to the end, then strike it.
    pub(crate) fn rderiv_c(&self, a: usize) -> Result<SuperPoly> {
        check_index(a, self.dim)?;
        Ok(self.strike(
            a,
            |m, b| ((m.c & b) != 0).then(|| (m.c & !(b | (b - 1))).count_ones() + m.cbar.count_ones()),
            true,
        ))
    }

    /// Right derivative `←∂/∂c̄_a`.
    pub(crate) fn rderiv_cbar(&self, a: usize) -> Result<SuperPoly> {
        check_index(a, self.dim)?;
        Ok(self.strike(a, |m, b| ((m.cbar & b) != 0).then(|| (m.cbar & !(b | (b - 1))).count_ones()), false))
    }

    /// Removes generator `a` from every monomial containing it; `crossings`
    /// reports how many odd factors it passes on the way out.
    fn strike(&self, a: usize, crossings: impl Fn(&Monomial, u32) -> Option<u32>, is_c: bool) -> SuperPoly {
        let b = bit(a);
        let mut out = SuperPoly::zero(self.dim);
        for (m, s) in &self.terms {
            if let Some(k) = crossings(m, b) {
                let mut m2 = m.clone();
                if is_c {
                    m2.c &= !b;
                } else {
                    m2.cbar &= !b;
                }
                out.add_term(m2, if k % 2 == 1 { -s } else { s.clone() });
            }
        }
        out
    }

    pub fn grade(&self) -> Grade {
        let mut parity = None;
        let mut ghost = None;
        let mut mixed_parity = false;
        let mut mixed_ghost = false;
        for m in self.terms.keys() {
            let p = if m.is_odd() { Parity::Odd } else { Parity::Even };
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => mixed_parity = true,
                _ => {}
            }
            let g = m.ghost_number();
            match ghost {
                None => ghost = Some(g),
                Some(h) if h != g => mixed_ghost = true,
                _ => {}
            }
        }
        if self.is_zero() {
            return Grade { parity: Some(Parity::Even), ghost: Some(0) };
        }
        Grade { parity: if mixed_parity { None } else { parity }, ghost: if mixed_ghost { None } else { ghost } }
    }

    /// Splits into even and odd parts.
    pub fn split_parity(&self) -> (SuperPoly, SuperPoly) {
        (self.filter(|m| !m.is_odd()), self.filter(|m| m.is_odd()))
    }

    /// Components of fixed ghost number.
    pub fn by_ghost(&self) -> BTreeMap<i32, SuperPoly> {
        let mut out: BTreeMap<i32, SuperPoly> = BTreeMap::new();
        for (m, s) in &self.terms {
            out.entry(m.ghost_number()).or_insert_with(|| SuperPoly::zero(self.dim)).add_term(m.clone(), s.clone());
        }
        out
    }

    /// Homogeneous components, one per monomial parity.
    pub fn homogeneous_parts(&self) -> Vec<(Parity, SuperPoly)> {
        let (even, odd) = self.split_parity();
        let mut out = Vec::new();
        if !even.is_zero() {
            out.push((Parity::Even, even));
        }
        if !odd.is_zero() {
            out.push((Parity::Odd, odd));
        }
        out
    }

    pub fn is_phi_only(&self) -> bool {
        self.terms.keys().all(Monomial::is_phi_only)
    }

    pub fn is_lambda_free(&self) -> bool {
        self.terms.keys().all(|m| m.lambda_degree() == 0)
    }

    pub fn is_cbar_free(&self) -> bool {
        self.terms.keys().all(|m| m.cbar == 0)
    }

    pub fn is_c_free(&self) -> bool {
        self.terms.keys().all(|m| m.c == 0)
    }

    pub fn max_phi_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::phi_degree).max().unwrap_or(0)
    }

    /// Evaluates a φ-only polynomial at a rational point.
    pub fn eval_phi(&self, point: &[BigRational]) -> Result<Scalar> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: point.len() });
        }
        if !self.is_phi_only() {
            return Err(Error::NotPhiOnly("evaluated polynomial"));
        }
        let mut acc = Scalar::zero();
        for (m, s) in &self.terms {
            let mut v = BigRational::one();
            for (x, &e) in point.iter().zip(&m.phi) {
                for _ in 0..e {
                    v *= x;
                }
            }
            acc += &(s * &Scalar::real(v));
        }
        Ok(acc)
    }

    /// Multiplies by the Grassmann monomial `c^{C} c̄_{B}` given as masks,
    /// placed on the right.
    pub(crate) fn times_grassmann(&self, c: u32, cbar: u32) -> SuperPoly {
        let mut right = Monomial::one(self.dim);
        right.c = c;
        right.cbar = cbar;
        self.checked_mul(&SuperPoly::from_term(right, Scalar::one())).expect("same dimension")
    }

    /// Coefficient polynomial of the pure Grassmann monomial `c^{C} c̄_{B}`
    /// (in canonical order) among λ-free terms.
    pub(crate) fn grassmann_coeff(&self, c: u32, cbar: u32) -> SuperPoly {
        let mut out = SuperPoly::zero(self.dim);
        for (m, s) in &self.terms {
            if m.c == c && m.cbar == cbar {
                let mut m2 = m.clone();
                m2.c = 0;
                m2.cbar = 0;
                out.add_term(m2, s.clone());
            }
        }
        out
    }

    /// Distinct Grassmann parts `(c-mask, c̄-mask)` present.
    pub(crate) fn grassmann_parts(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self.terms.keys().map(|m| (m.c, m.cbar)).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Sign `(-1)^k` of sorting a Grassmann index list, or `None` if it repeats.
pub(crate) fn sort_sign(idx: &[usize]) -> Option<(u32, bool)> {
    let mut mask = 0u32;
    let mut swaps = 0u32;
    for &a in idx {
        let b = bit(a);
        if mask & b != 0 {
            return None;
        }
        swaps += merge_inversions(mask, b);
        mask |= b;
    }
    Some((mask, swaps % 2 == 1))
}

pub(crate) fn mask_indices(mask: u32) -> Vec<usize> {
    indices(mask).collect()
}

impl Add<&SuperPoly> for &SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_add(rhs).expect("dimension mismatch in add")
    }
}

impl Add for SuperPoly {
    type Output = SuperPoly;
    fn add(self, rhs: SuperPoly) -> SuperPoly {
        &self + &rhs
    }
}

impl Sub<&SuperPoly> for &SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_sub(rhs).expect("dimension mismatch in sub")
    }
}

impl Sub for SuperPoly {
    type Output = SuperPoly;
    fn sub(self, rhs: SuperPoly) -> SuperPoly {
        &self - &rhs
    }
}

impl Mul<&SuperPoly> for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &SuperPoly) -> SuperPoly {
        self.checked_mul(rhs).expect("dimension mismatch in mul")
    }
}

impl Mul for SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: SuperPoly) -> SuperPoly {
        &self * &rhs
    }
}

impl Mul<&Scalar> for &SuperPoly {
    type Output = SuperPoly;
    fn mul(self, rhs: &Scalar) -> SuperPoly {
        self.scale(rhs)
    }
}

impl Neg for &SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Neg for SuperPoly {
    type Output = SuperPoly;
    fn neg(self) -> SuperPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const D: usize = 4;

    fn c(a: usize) -> SuperPoly {
        SuperPoly::c(D, a).unwrap()
    }
    fn cb(a: usize) -> SuperPoly {
        SuperPoly::cbar(D, a).unwrap()
    }
    fn phi(a: usize) -> SuperPoly {
        SuperPoly::phi(D, a).unwrap()
    }
    fn lam(a: usize) -> SuperPoly {
        SuperPoly::lambda(D, a).unwrap()
    }

    #[test]
    fn add_examples() {
        assert_eq!(&c(1) + &SuperPoly::zero(D), c(1));
        assert!((&c(1) + &(-&c(1))).is_zero());
        let t = &phi(1) * &c(2);
        assert_eq!(&t + &t, t.scale(&Scalar::from_int(2)));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&c(2) * &c(1), -(&c(1) * &c(2)));
        assert!((&c(1) * &c(1)).is_zero());
        let lhs = &(&phi(1) * &c(1)) * &(&phi(2) * &cb(2));
        let rhs = &(&(&phi(1) * &phi(2)) * &c(1)) * &cb(2);
        assert_eq!(lhs, rhs);
        // canonical order is c before c̄: c̄_1 c^1 = -c^1 c̄_1
        assert_eq!(&cb(1) * &c(1), -(&c(1) * &cb(1)));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = SuperPoly::c(2, 1).unwrap();
        let b = SuperPoly::c(4, 1).unwrap();
        assert_eq!(a.checked_add(&b), Err(Error::DimensionMismatch { left: 2, right: 4 }));
        assert!(a.checked_mul(&b).is_err());
        assert_eq!(SuperPoly::c(2, 3), Err(Error::IndexOutOfRange { index: 3, dim: 2 }));
    }

    #[test]
    fn even_derivatives() {
        let p = &phi(1) * &phi(2);
        assert_eq!(p.deriv_phi(1).unwrap(), phi(2));
        assert!(c(1).deriv_phi(1).unwrap().is_zero());
        let l2 = &lam(1) * &lam(1);
        assert_eq!(l2.deriv_lambda(1).unwrap(), lam(1).scale(&Scalar::from_int(2)));
        assert!(p.deriv_phi(5).is_err());
    }

    /// Sign of moving position `pos` of a symbol word to the front by
    /// adjacent transpositions, counting only odd neighbours.
    fn transposition_sign(word: &[bool], pos: usize) -> i64 {
        let mut w = word.to_vec();
        let mut sign = 1;
        for i in (0..pos).rev() {
            if w[i] && w[i + 1] {
                sign = -sign;
            }
            w.swap(i, i + 1);
        }
        sign
    }

    #[test]
    fn odd_left_derivative_examples() {
        let p = &c(1) * &c(2);
        assert_eq!(p.deriv_c(1).unwrap(), c(2));
        // c^2 sits in slot 1 of the odd word (c^1, c^2)
        let s = transposition_sign(&[true, true], 1);
        assert_eq!(s, -1);
        assert_eq!(p.deriv_c(2).unwrap(), c(1).scale(&Scalar::from_int(s)));
        assert!(phi(1).deriv_c(1).unwrap().is_zero());
    }

    #[test]
    fn right_derivatives() {
        let p = &(&c(1) * &c(2)) * &cb(3);
        // c1 c2 cb3 -> move c1 past c2 and cb3: +, strike -> c2 cb3
        assert_eq!(p.rderiv_c(1).unwrap(), &c(2) * &cb(3));
        assert_eq!(p.rderiv_c(2).unwrap(), -(&c(1) * &cb(3)));
        assert_eq!(p.rderiv_cbar(3).unwrap(), &c(1) * &c(2));
        assert_eq!(p.deriv_cbar(3).unwrap(), &c(1) * &c(2));
    }

    #[test]
    fn grade_examples() {
        let g = (&c(1) * &cb(2)).grade();
        assert_eq!(g.parity, Some(Parity::Even));
        assert_eq!(g.ghost, Some(0));
        let g = c(1).grade();
        assert_eq!((g.parity, g.ghost), (Some(Parity::Odd), Some(1)));
        let g = (&c(1) + &(&c(1) * &c(2))).grade();
        assert_eq!((g.parity, g.ghost), (None, None));
    }

    #[test]
    fn sort_sign_counts_inversions() {
        assert_eq!(sort_sign(&[2, 1]), Some((3, true)));
        assert_eq!(sort_sign(&[1, 2, 3]), Some((7, false)));
        assert_eq!(sort_sign(&[3, 1, 2]), Some((7, false)));
        assert_eq!(sort_sign(&[1, 1]), None);
    }
}

//! Phase-space configuration: the constant symplectic matrices, Hamiltonian
//! vector fields and the ordinary Poisson bracket.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::{SuperPoly, MAX_DIM};

pub type Matrix = Vec<Vec<BigRational>>;

/// Dimension and constant symplectic structure of phase space. `upper` holds
/// `ω^{ab}`, `lower` holds `ω_{ab}`, with `ω^{ab} ω_{bc} = δ^a_c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticContext {
    n: usize,
    standard: bool,
    upper: Matrix,
    lower: Matrix,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Exact inverse by Gauss-Jordan elimination, `None` if singular.
fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * n {
                    let v = &a[col][j] * &f;
                    a[r][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl SymplecticContext {
    /// Block form `ω^{ab} = [[0, I], [-I, 0]]` on `2n` coordinates.
    pub fn standard(n: usize) -> Result<Self> {
        let dim = 2 * n;
        if n == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut upper = vec![vec![int(0); dim]; dim];
        for i in 0..n {
            upper[i][i + n] = int(1);
            upper[i + n][i] = int(-1);
        }
        let lower = invert(&upper).expect("standard form is invertible");
        Ok(SymplecticContext { n, standard: true, upper, lower })
    }

    /// From explicit rows of `ω^{ab}`, which must be square of even size,
    /// antisymmetric and invertible.
    pub fn from_upper(upper: Matrix) -> Result<Self> {
        let dim = upper.len();
        if dim == 0 || dim % 2 == 1 {
            return Err(Error::MalformedOmega(format!("size {dim} is not a positive even number")));
        }
        if dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        if let Some(i) = upper.iter().position(|r| r.len() != dim) {
            return Err(Error::MalformedOmega(format!("row {} has {} entries, expected {dim}", i + 1, upper[i].len())));
        }
        for a in 0..dim {
            for b in 0..dim {
                if upper[a][b] != -upper[b][a].clone() {
                    return Err(Error::MalformedOmega(format!("not antisymmetric at ({}, {})", a + 1, b + 1)));
                }
            }
        }
        let lower = invert(&upper).ok_or_else(|| Error::MalformedOmega("singular matrix".into()))?;
        let standard = SymplecticContext::standard(dim / 2)?;
        Ok(SymplecticContext { n: dim / 2, standard: upper == standard.upper, upper, lower })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of phase-space coordinates, `2n`.
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    /// `ω^{ab}`, 1-based.
    pub fn upper(&self, a: usize, b: usize) -> &BigRational {
        &self.upper[a - 1][b - 1]
    }

    /// `ω_{ab}`, 1-based.
    pub fn lower(&self, a: usize, b: usize) -> &BigRational {
        &self.lower[a - 1][b - 1]
    }

    pub fn upper_matrix(&self) -> &Matrix {
        &self.upper
    }

    pub fn lower_matrix(&self) -> &Matrix {
        &self.lower
    }

    fn check(&self, f: &SuperPoly, what: &'static str) -> Result<()> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: f.dim() });
        }
        if !f.is_phi_only() {
            return Err(Error::NotPhiOnly(what));
        }
        Ok(())
    }

    /// `ω^{ab} ∂_b f`, the gradient raised with the upper matrix.
    fn raise_gradient(&self, f: &SuperPoly) -> Vec<SuperPoly> {
        let dim = self.dim();
        let grad: Vec<SuperPoly> = (1..=dim).map(|b| f.deriv_phi(b).expect("index in range")).collect();
        (1..=dim)
            .map(|a| {
                let mut acc = SuperPoly::zero(dim);
                for (b, g) in grad.iter().enumerate() {
                    let w = self.upper(a, b + 1);
                    if !w.is_zero() {
                        acc = &acc + &g.scale(&Scalar::real(w.clone()));
                    }
                }
                acc
            })
            .collect()
    }

    /// Components `h^a = ω^{ab} ∂_b H`.
    pub fn hamiltonian_vector_field(&self, h: &SuperPoly) -> Result<Vec<SuperPoly>> {
        self.check(h, "Hamiltonian")?;
        Ok(self.raise_gradient(h))
    }

    /// `{f, g} = ∂_a f ω^{ab} ∂_b g`.
    pub fn poisson_bracket(&self, f: &SuperPoly, g: &SuperPoly) -> Result<SuperPoly> {
        self.check(f, "Poisson bracket argument")?;
        self.check(g, "Poisson bracket argument")?;
        let hg = self.raise_gradient(g);
        let mut acc = SuperPoly::zero(self.dim());
        for (a, x) in hg.iter().enumerate() {
            acc = &acc + &(&f.deriv_phi(a + 1)? * x);
        }
        Ok(acc)
    }
}

/// Checks `ω^{ab} ω_{bc} = δ^a_c`.
pub fn is_inverse_pair(upper: &Matrix, lower: &Matrix) -> bool {
    let n = upper.len();
    (0..n).all(|a| {
        (0..n).all(|c| {
            let s: BigRational = (0..n).map(|b| &upper[a][b] * &lower[b][c]).sum();
            if a == c {
                s.is_one()
            } else {
                s.is_zero()
            }
        })
    })
}

use std::cmp::Ordering;

/// Largest phase-space dimension representable by the Grassmann bitmasks.
pub const MAX_DIM: usize = 32;

/// A monomial `φ^α λ^β c^{C} c̄_{B}` in canonical factor order.
///
/// Grassmann index sets are bitmasks (bit `a-1` stands for index `a`), so the
/// ascending-index invariant holds by construction and repeated odd factors
/// cannot be represented.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub(crate) phi: Vec<u32>,
    pub(crate) lambda: Vec<u32>,
    pub(crate) c: u32,
    pub(crate) cbar: u32,
}

/// Number of pairs `(x, y)` with `x` in `left`, `y` in `right` and `x > y`:
/// the transpositions needed to sort the concatenation `left ++ right`.
pub(crate) fn merge_inversions(left: u32, right: u32) -> u32 {
    let mut count = 0;
    let mut r = right;
    while r != 0 {
        let bit = r.trailing_zeros();
        count += (left >> bit >> 1).count_ones();
        r &= r - 1;
    }
    count
}

pub(crate) fn bit(index: usize) -> u32 {
    1u32 << (index - 1)
}

/// 1-based indices set in `mask`, ascending.
pub(crate) fn indices(mask: u32) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b + 1)
        }
    })
}

impl Monomial {
    pub fn one(dim: usize) -> Self {
        Monomial { phi: vec![0; dim], lambda: vec![0; dim], c: 0, cbar: 0 }
    }

    pub fn dim(&self) -> usize {
        self.phi.len()
    }

    pub fn phi_exp(&self, a: usize) -> u32 {
        self.phi[a - 1]
    }

    pub fn lambda_exp(&self, a: usize) -> u32 {
        self.lambda[a - 1]
    }

    pub fn c_indices(&self) -> Vec<usize> {
        indices(self.c).collect()
    }

    pub fn cbar_indices(&self) -> Vec<usize> {
        indices(self.cbar).collect()
    }

    pub fn c_count(&self) -> u32 {
        self.c.count_ones()
    }

    pub fn cbar_count(&self) -> u32 {
        self.cbar.count_ones()
    }

    pub fn phi_degree(&self) -> u32 {
        self.phi.iter().sum()
    }

    pub fn lambda_degree(&self) -> u32 {
        self.lambda.iter().sum()
    }

    pub fn is_odd(&self) -> bool {
        (self.c_count() + self.cbar_count()) % 2 == 1
    }

    pub fn ghost_number(&self) -> i32 {
        self.c_count() as i32 - self.cbar_count() as i32
    }

    pub fn is_phi_only(&self) -> bool {
        self.c == 0 && self.cbar == 0 && self.lambda.iter().all(|&e| e == 0)
    }

    /// Product of two canonical monomials. Returns `None` when a Grassmann
    /// generator repeats, otherwise the product and whether its sign flips.
    pub(crate) fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        if self.c & other.c != 0 || self.cbar & other.cbar != 0 {
            return None;
        }
        // (C1 B1)(C2 B2) -> C1 C2 B1 B2: move C2 past B1, then sort each block.
        let swaps = self.cbar.count_ones() * other.c.count_ones()
            + merge_inversions(self.c, other.c)
            + merge_inversions(self.cbar, other.cbar);
        let phi = self.phi.iter().zip(&other.phi).map(|(a, b)| a + b).collect();
        let lambda = self.lambda.iter().zip(&other.lambda).map(|(a, b)| a + b).collect();
        Some((Monomial { phi, lambda, c: self.c | other.c, cbar: self.cbar | other.cbar }, swaps % 2 == 1))
    }

    /// Ordering used by the printer: Grassmann degree, φ-degree, then the
    /// index structure lexicographically.
    pub fn display_cmp(&self, other: &Monomial) -> Ordering {
        let gdeg = |m: &Monomial| m.c_count() + m.cbar_count();
        gdeg(self)
            .cmp(&gdeg(other))
            .then(self.phi_degree().cmp(&other.phi_degree()))
            .then(self.lambda_degree().cmp(&other.lambda_degree()))
            .then_with(|| self.c_indices().cmp(&other.c_indices()))
            .then_with(|| self.cbar_indices().cmp(&other.cbar_indices()))
            .then_with(|| other.phi.cmp(&self.phi))
            .then_with(|| other.lambda.cmp(&self.lambda))
    }
}

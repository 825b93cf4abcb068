//! Coordinate tensors with antisymmetric index storage.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::superalgebra::SuperPoly;

/// Sorts an index tuple. Returns the ascending tuple and the permutation
/// sign, or `None` when an index repeats (the component vanishes).
pub fn sort_indices(idx: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = idx.to_vec();
    let mut odd = false;
    // insertion sort, counting swaps
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, odd))
    }
}

/// All ascending `k`-subsets of `1..=dim`.
pub fn ascending_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    if k > dim {
        return Vec::new();
    }
    (1..=dim).combinations(k).collect()
}

/// Alternating coefficient array keyed by ascending index tuples, shared
/// by forms and multivectors.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Alternating {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, SuperPoly>,
}

impl Alternating {
    fn zero(dim: usize, degree: usize) -> Self {
        Alternating { dim, degree, coeffs: BTreeMap::new() }
    }

    fn add_component(&mut self, idx: &[usize], value: &SuperPoly) -> Result<()> {
        if idx.len() != self.degree {
            return Err(Error::InvalidRank(format!(
                "index tuple {idx:?} has length {}, expected {}",
                idx.len(),
                self.degree
            )));
        }
        if let Some(&bad) = idx.iter().find(|&&a| a == 0 || a > self.dim) {
            return Err(Error::IndexOutOfRange { index: bad, dim: self.dim });
        }
        if value.dim() != self.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: value.dim() });
        }
        if !value.is_phi_only() {
            return Err(Error::NotPhiOnly("tensor coefficient"));
        }
        let Some((sorted, odd)) = sort_indices(idx) else {
            return Ok(());
        };
        let v = if odd { -value } else { value.clone() };
        let slot = self.coeffs.entry(sorted.clone()).or_insert_with(|| SuperPoly::zero(self.dim));
        *slot = &*slot + &v;
        if slot.is_zero() {
            self.coeffs.remove(&sorted);
        }
        Ok(())
    }

    fn get(&self, idx: &[usize]) -> SuperPoly {
        match sort_indices(idx) {
            None => SuperPoly::zero(self.dim),
            Some((sorted, odd)) => match self.coeffs.get(&sorted) {
                None => SuperPoly::zero(self.dim),
                Some(v) if odd => -v,
                Some(v) => v.clone(),
            },
        }
    }

    fn map(&self, f: impl Fn(&SuperPoly) -> SuperPoly) -> Self {
        let mut out = Alternating::zero(self.dim, self.degree);
        for (k, v) in &self.coeffs {
            let w = f(v);
            if !w.is_zero() {
                out.coeffs.insert(k.clone(), w);
            }
        }
        out
    }

    fn combine(&self, other: &Self, sign: &Scalar) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: other.dim });
        }
        if self.degree != other.degree {
            return Err(Error::InvalidRank(format!("degree {} vs {}", self.degree, other.degree)));
        }
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_component(k, &v.scale(sign))?;
        }
        Ok(out)
    }
}

macro_rules! alternating_tensor {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, PartialEq, Eq, Debug)]
        pub struct $name(Alternating);

        impl $name {
            pub fn zero(dim: usize, degree: usize) -> Self {
                $name(Alternating::zero(dim, degree))
            }

            /// Builds from `(index tuple, coefficient)` pairs. Tuples may be in
            /// any order; antisymmetry is applied on insertion and entries
            /// with repeated indices vanish.
            pub fn from_components<I>(dim: usize, degree: usize, comps: I) -> Result<Self>
            where
                I: IntoIterator<Item = (Vec<usize>, SuperPoly)>,
            {
                let mut t = Alternating::zero(dim, degree);
                for (idx, v) in comps {
                    t.add_component(&idx, &v)?;
                }
                Ok($name(t))
            }

            pub fn dim(&self) -> usize {
                self.0.dim
            }

            pub fn degree(&self) -> usize {
                self.0.degree
            }

            pub fn is_zero(&self) -> bool {
                self.0.coeffs.is_empty()
            }

            /// Component for an arbitrary index tuple.
            pub fn get(&self, idx: &[usize]) -> SuperPoly {
                self.0.get(idx)
            }

            pub fn add_component(&mut self, idx: &[usize], value: &SuperPoly) -> Result<()> {
                self.0.add_component(idx, value)
            }

            /// Nonzero components keyed by ascending tuple.
            pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &SuperPoly)> {
                self.0.coeffs.iter()
            }

            pub fn map_coeffs(&self, f: impl Fn(&SuperPoly) -> SuperPoly) -> Self {
                $name(self.0.map(f))
            }

            pub fn scale(&self, s: &Scalar) -> Self {
                self.map_coeffs(|p| p.scale(s))
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                Ok($name(self.0.combine(&other.0, &Scalar::one())?))
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                Ok($name(self.0.combine(&other.0, &Scalar::from_int(-1))?))
            }
        }
    };
}

alternating_tensor!(
    /// A differential `p`-form `Σ_{A ascending} F_A dφ^{a_1}∧⋯∧dφ^{a_p}`.
    /// `F_A` is the fully antisymmetric coefficient, so
    /// `F(∂_{a_1}, …, ∂_{a_p}) = F_{a_1…a_p}`.
    DifferentialForm
);

alternating_tensor!(
    /// An antisymmetric multivector field `Σ_{A ascending} V^A ∂_{a_1}∧⋯∧∂_{a_p}`.
    Multivector
);

impl DifferentialForm {
    pub fn function(f: SuperPoly) -> Result<Self> {
        let dim = f.dim();
        DifferentialForm::from_components(dim, 0, [(vec![], f)])
    }
}

impl Multivector {
    /// A vector field from its `dim` components.
    pub fn vector(components: &[SuperPoly]) -> Result<Self> {
        let dim = components.first().map(SuperPoly::dim).unwrap_or(0);
        if components.len() != dim {
            return Err(Error::ComponentCount { expected: dim, got: components.len() });
        }
        Multivector::from_components(dim, 1, components.iter().enumerate().map(|(a, v)| (vec![a + 1], v.clone())))
    }

    /// Components `V^1 … V^dim` of a rank-1 multivector.
    pub fn vector_components(&self) -> Result<Vec<SuperPoly>> {
        if self.degree() != 1 {
            return Err(Error::InvalidRank(format!("expected a vector field, got rank {}", self.degree())));
        }
        Ok((1..=self.dim()).map(|a| self.get(&[a])).collect())
    }
}

/// A vector-valued form `Σ_i K^i ⊗ ∂_i` with `K^i` a form of degree
/// `form_degree`. A vector field is the case `form_degree = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VectorValuedForm {
    dim: usize,
    form_degree: usize,
    parts: Vec<DifferentialForm>,
}

impl VectorValuedForm {
    pub fn zero(dim: usize, form_degree: usize) -> Self {
        VectorValuedForm {
            dim,
            form_degree,
            parts: (0..dim).map(|_| DifferentialForm::zero(dim, form_degree)).collect(),
        }
    }

    /// From components `(upper index i, lower tuple, coefficient)`.
    pub fn from_components<I>(dim: usize, form_degree: usize, comps: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, Vec<usize>, SuperPoly)>,
    {
        let mut out = VectorValuedForm::zero(dim, form_degree);
        for (i, idx, v) in comps {
            out.add_component(i, &idx, &v)?;
        }
        Ok(out)
    }

    /// From the form-valued components `K^1 … K^dim`.
    pub fn from_parts(parts: Vec<DifferentialForm>) -> Result<Self> {
        let dim = parts.first().map(DifferentialForm::dim).unwrap_or(0);
        if parts.len() != dim {
            return Err(Error::ComponentCount { expected: dim, got: parts.len() });
        }
        let form_degree = parts[0].degree();
        if parts.iter().any(|p| p.dim() != dim || p.degree() != form_degree) {
            return Err(Error::InvalidRank("inconsistent component forms".into()));
        }
        Ok(VectorValuedForm { dim, form_degree, parts })
    }

    /// The identity endomorphism `Σ_a dφ^a ⊗ ∂_a`.
    pub fn identity(dim: usize) -> Self {
        let one = SuperPoly::one(dim);
        VectorValuedForm::from_components(dim, 1, (1..=dim).map(|a| (a, vec![a], one.clone()))).expect("valid identity")
    }

    pub fn from_vector(v: &Multivector) -> Result<Self> {
        let comps = v.vector_components()?;
        VectorValuedForm::from_components(v.dim(), 0, comps.into_iter().enumerate().map(|(a, p)| (a + 1, vec![], p)))
    }

    pub fn to_vector(&self) -> Result<Multivector> {
        if self.form_degree != 0 {
            return Err(Error::InvalidRank(format!("form degree {} is not a vector field", self.form_degree)));
        }
        Multivector::vector(&self.parts.iter().map(|p| p.get(&[])).collect::<Vec<_>>())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn form_degree(&self) -> usize {
        self.form_degree
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(DifferentialForm::is_zero)
    }

    pub fn add_component(&mut self, i: usize, idx: &[usize], value: &SuperPoly) -> Result<()> {
        if i == 0 || i > self.dim {
            return Err(Error::IndexOutOfRange { index: i, dim: self.dim });
        }
        self.parts[i - 1].add_component(idx, value)
    }

    pub fn get(&self, i: usize, idx: &[usize]) -> SuperPoly {
        self.parts[i - 1].get(idx)
    }

    /// The form `K^i`.
    pub fn part(&self, i: usize) -> &DifferentialForm {
        &self.parts[i - 1]
    }

    pub fn parts(&self) -> &[DifferentialForm] {
        &self.parts
    }

    /// Nonzero components `(i, ascending tuple, coefficient)`.
    pub fn components(&self) -> impl Iterator<Item = (usize, &Vec<usize>, &SuperPoly)> {
        self.parts.iter().enumerate().flat_map(|(i, p)| p.components().map(move |(k, v)| (i + 1, k, v)))
    }

    pub fn map_parts(&self, f: impl Fn(&DifferentialForm) -> DifferentialForm) -> Self {
        let parts: Vec<_> = self.parts.iter().map(f).collect();
        let form_degree = parts.first().map(|p| p.degree()).unwrap_or(self.form_degree);
        VectorValuedForm { dim: self.dim, form_degree, parts }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map_parts(|p| p.scale(s))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim || self.form_degree != other.form_degree {
            return Err(Error::InvalidRank("vector-valued forms of different shape".into()));
        }
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.add(b)).collect::<Result<Vec<_>>>()?;
        VectorValuedForm::from_parts(parts)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(a: usize) -> SuperPoly {
        SuperPoly::phi(3, a).unwrap()
    }

    #[test]
    fn antisymmetric_reconstruction() {
        let f = DifferentialForm::from_components(3, 2, [(vec![2, 1], phi(3))]).unwrap();
        assert_eq!(f.get(&[1, 2]), -phi(3));
        assert_eq!(f.get(&[2, 1]), phi(3));
        assert!(f.get(&[1, 1]).is_zero());
        assert_eq!(f.components().count(), 1);
    }

    #[test]
    fn degree_above_dimension_is_zero() {
        let f = DifferentialForm::from_components(3, 4, [(vec![1, 2, 3, 1], phi(1))]).unwrap();
        assert!(f.is_zero());
    }

    #[test]
    fn rejects_non_phi_coefficients() {
        let c = SuperPoly::c(3, 1).unwrap();
        assert_eq!(Multivector::from_components(3, 1, [(vec![1], c)]), Err(Error::NotPhiOnly("tensor coefficient")));
    }

    #[test]
    fn identity_components() {
        let id = VectorValuedForm::identity(2);
        assert_eq!(id.get(1, &[1]), SuperPoly::one(2));
        assert!(id.get(1, &[2]).is_zero());
        assert_eq!(id.components().count(), 2);
    }
}

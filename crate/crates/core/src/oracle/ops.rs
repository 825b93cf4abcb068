//! Textbook coordinate formulas for the Cartan operations.

use super::tensor::{ascending_tuples, DifferentialForm, Multivector};
use crate::error::{Error, Result};
use crate::superalgebra::SuperPoly;

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left: a, right: b })
    }
}

/// Sign of the shuffle taking `left ++ right` to ascending order.
fn shuffle_odd(left: &[usize], right: &[usize]) -> bool {
    let mut n = 0;
    for a in left {
        n += right.iter().filter(|&&b| *a > b).count();
    }
    n % 2 == 1
}

/// Coefficients of `α ∧ β` for alternating arrays given by lookup closures.
fn wedge_coeffs(
    dim: usize,
    p: usize,
    q: usize,
    alpha: impl Fn(&[usize]) -> SuperPoly,
    beta: impl Fn(&[usize]) -> SuperPoly,
) -> Vec<(Vec<usize>, SuperPoly)> {
    let mut out = Vec::new();
    for c in ascending_tuples(dim, p + q) {
        let mut acc = SuperPoly::zero(dim);
        for pos in ascending_tuples(p + q, p) {
            let a: Vec<usize> = pos.iter().map(|&i| c[i - 1]).collect();
            let b: Vec<usize> = c.iter().copied().filter(|x| !a.contains(x)).collect();
            let term = &alpha(&a) * &beta(&b);
            acc = if shuffle_odd(&a, &b) { &acc - &term } else { &acc + &term };
        }
        if !acc.is_zero() {
            out.push((c, acc));
        }
    }
    out
}

pub fn wedge_forms(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
    check_dims(a.dim(), b.dim())?;
    let deg = a.degree() + b.degree();
    let comps = wedge_coeffs(a.dim(), a.degree(), b.degree(), |i| a.get(i), |i| b.get(i));
    DifferentialForm::from_components(a.dim(), deg, comps)
}

pub fn wedge_multivectors(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    check_dims(a.dim(), b.dim())?;
    let deg = a.degree() + b.degree();
    let comps = wedge_coeffs(a.dim(), a.degree(), b.degree(), |i| a.get(i), |i| b.get(i));
    Multivector::from_components(a.dim(), deg, comps)
}

/// Exterior derivative: `(dF)_{b_0…b_p} = Σ_k (-1)^k ∂_{b_k} F_{b_0…b̂_k…b_p}`.
pub fn d(form: &DifferentialForm) -> DifferentialForm {
    let dim = form.dim();
    let p = form.degree();
    let mut comps = Vec::new();
    for b in ascending_tuples(dim, p + 1) {
        let mut acc = SuperPoly::zero(dim);
        for k in 0..b.len() {
            let rest: Vec<usize> = b.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, &x)| x).collect();
            let term = form.get(&rest).deriv_phi(b[k]).expect("index in range");
            acc = if k % 2 == 1 { &acc - &term } else { &acc + &term };
        }
        comps.push((b, acc));
    }
    DifferentialForm::from_components(dim, p + 1, comps).expect("well-formed")
}

/// Interior product into the first slot: `(i_v F)_A = v^b F_{bA}`.
pub fn interior(v: &[SuperPoly], form: &DifferentialForm) -> Result<DifferentialForm> {
    let dim = form.dim();
    if v.len() != dim {
        return Err(Error::ComponentCount { expected: dim, got: v.len() });
    }
    let p = form.degree();
    if p == 0 {
        return Ok(DifferentialForm::zero(dim, 0));
    }
    let mut comps = Vec::new();
    for a in ascending_tuples(dim, p - 1) {
        let mut acc = SuperPoly::zero(dim);
        for (b, vb) in v.iter().enumerate() {
            let mut idx = vec![b + 1];
            idx.extend_from_slice(&a);
            acc = &acc + &(vb * &form.get(&idx));
        }
        comps.push((a, acc));
    }
    DifferentialForm::from_components(dim, p - 1, comps)
}

/// Lie derivative of a form, `L_v = i_v d + d i_v`.
pub fn lie_form(v: &[SuperPoly], form: &DifferentialForm) -> Result<DifferentialForm> {
    let a = interior(v, &d(form))?;
    let b = d(&interior(v, form)?);
    if form.degree() == 0 {
        return Ok(a);
    }
    a.add(&b)
}

/// `V^b ∂_b W^a − W^b ∂_b V^a`.
pub fn lie_bracket(v: &[SuperPoly], w: &[SuperPoly]) -> Result<Vec<SuperPoly>> {
    if v.len() != w.len() {
        return Err(Error::ComponentCount { expected: v.len(), got: w.len() });
    }
    let dim = v.len();
    let mut out = Vec::with_capacity(dim);
    for a in 1..=dim {
        let mut acc = SuperPoly::zero(w[0].dim());
        for b in 1..=dim {
            acc = &acc + &(&v[b - 1] * &w[a - 1].deriv_phi(b)?);
            acc = &acc - &(&w[b - 1] * &v[a - 1].deriv_phi(b)?);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Lie derivative of a multivector along `y`:
/// `(L_y P)^A = y^b ∂_b P^A − Σ_k ∂_b y^{a_k} P^{a_1…b…a_p}`.
pub fn lie_multivector(y: &[SuperPoly], p: &Multivector) -> Result<Multivector> {
    let dim = p.dim();
    if y.len() != dim {
        return Err(Error::ComponentCount { expected: dim, got: y.len() });
    }
    let mut comps = Vec::new();
    for a in ascending_tuples(dim, p.degree()) {
        let mut acc = SuperPoly::zero(dim);
        for b in 1..=dim {
            acc = &acc + &(&y[b - 1] * &p.get(&a).deriv_phi(b)?);
            for k in 0..a.len() {
                let mut idx = a.clone();
                idx[k] = b;
                acc = &acc - &(&y[a[k] - 1].deriv_phi(b)? * &p.get(&idx));
            }
        }
        comps.push((a, acc));
    }
    Multivector::from_components(dim, p.degree(), comps)
}

/// Directional derivative of a function along a vector field.
pub fn apply_vector(v: &[SuperPoly], f: &SuperPoly) -> Result<SuperPoly> {
    let mut acc = SuperPoly::zero(f.dim());
    for (b, vb) in v.iter().enumerate() {
        acc = &acc + &(vb * &f.deriv_phi(b + 1)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn phi(a: usize) -> SuperPoly {
        SuperPoly::phi(2, a).unwrap()
    }

    fn one() -> SuperPoly {
        SuperPoly::one(2)
    }

    fn zero() -> SuperPoly {
        SuperPoly::zero(2)
    }

    #[test]
    fn d_of_product() {
        let f = DifferentialForm::function(&phi(1) * &phi(2)).unwrap();
        let df = d(&f);
        assert_eq!(df.get(&[1]), phi(2));
        assert_eq!(df.get(&[2]), phi(1));
    }

    #[test]
    fn interior_of_area_form() {
        let area = DifferentialForm::from_components(2, 2, [(vec![1, 2], one())]).unwrap();
        let r = interior(&[one(), zero()], &area).unwrap();
        assert_eq!(r.get(&[2]), one());
        assert!(r.get(&[1]).is_zero());
    }

    #[test]
    fn lie_of_bivector() {
        let p = Multivector::from_components(2, 2, [(vec![1, 2], one())]).unwrap();
        let r = lie_multivector(&[phi(1), zero()], &p).unwrap();
        assert_eq!(r.get(&[1, 2]), -one());
    }

    #[test]
    fn lie_bracket_examples() {
        let r = lie_bracket(&[phi(1), zero()], &[one(), zero()]).unwrap();
        assert_eq!(r, vec![-one(), zero()]);
        let v = [&phi(1) * &phi(2), phi(1).scale(&Scalar::from_int(3))];
        assert!(lie_bracket(&v, &v).unwrap().iter().all(SuperPoly::is_zero));
    }

    #[test]
    fn wedge_is_graded_commutative() {
        let a = DifferentialForm::from_components(2, 1, [(vec![1], phi(2))]).unwrap();
        let b = DifferentialForm::from_components(2, 1, [(vec![2], phi(1))]).unwrap();
        let ab = wedge_forms(&a, &b).unwrap();
        let ba = wedge_forms(&b, &a).unwrap();
        assert_eq!(ab, ba.scale(&Scalar::from_int(-1)));
        assert_eq!(ab.get(&[1, 2]), &phi(1) * &phi(2));
    }
}

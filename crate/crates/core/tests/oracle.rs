use gradedcartan::epb::{form_to_super, vvform_to_super};
use gradedcartan::gen;
use gradedcartan::oracle::{
    self, contraction, d, fn_bracket, generalized_lie, nr_bracket, sn_bracket, sn_lie_expansion, solve_fn_with,
    wedge_multivectors, Commutator,
};
use gradedcartan::{
    DifferentialForm, Engine, Error, Multivector, Scalar, SuperPoly, SymplecticContext, VectorValuedForm,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn phi(dim: usize, a: usize) -> SuperPoly {
    SuperPoly::phi(dim, a).unwrap()
}

fn one(dim: usize) -> SuperPoly {
    SuperPoly::one(dim)
}

fn bivector12() -> Multivector {
    Multivector::from_components(2, 2, [(vec![1, 2], one(2))]).unwrap()
}

fn phi1_d1() -> Multivector {
    Multivector::vector(&[phi(2, 1), SuperPoly::zero(2)]).unwrap()
}

#[test]
fn d_interior_and_lie_examples() {
    let f = DifferentialForm::function(&phi(2, 1) * &phi(2, 2)).unwrap();
    let want = DifferentialForm::from_components(2, 1, [(vec![1], phi(2, 2)), (vec![2], phi(2, 1))]).unwrap();
    assert_eq!(d(&f), want);
    let area = DifferentialForm::from_components(2, 2, [(vec![1, 2], one(2))]).unwrap();
    let d2 = DifferentialForm::from_components(2, 1, [(vec![2], one(2))]).unwrap();
    assert_eq!(oracle::interior(&[one(2), SuperPoly::zero(2)], &area).unwrap(), d2);
    let lie = oracle::lie_multivector(&[phi(2, 1), SuperPoly::zero(2)], &bivector12()).unwrap();
    assert_eq!(lie, bivector12().scale(&Scalar::from_int(-1)));
}

#[test]
fn lie_bracket_examples() {
    let z = SuperPoly::zero(2);
    let r = oracle::lie_bracket(&[phi(2, 1), z.clone()], &[one(2), z.clone()]).unwrap();
    assert_eq!(r, vec![-one(2), z]);
}

#[test]
fn sn_example_is_graded_antisymmetric_convention() {
    // [∂1∧∂2, φ¹∂1] under the graded-antisymmetric normalization
    assert_eq!(sn_bracket(&bivector12(), &phi1_d1()).unwrap(), bivector12());
    assert_eq!(sn_bracket(&phi1_d1(), &bivector12()).unwrap(), bivector12().scale(&Scalar::from_int(-1)));
}

#[test]
fn uniform_sign_prefactor_breaks_antisymmetry() {
    // X(P,Q) = (-1)^{pq} Σ_j … is the other common normalization; it is not
    // graded antisymmetric on this pair.
    let x = |p: &Multivector, q: &Multivector| {
        let s = Scalar::sign((p.degree() * q.degree()) as i64);
        sn_lie_expansion(p, q).unwrap().scale(&s)
    };
    let (p, q) = (bivector12(), phi1_d1());
    let sign = -Scalar::sign(((p.degree() - 1) * (q.degree() - 1)) as i64);
    assert_ne!(x(&p, &q), x(&q, &p).scale(&sign));
    assert_eq!(x(&p, &q), bivector12().scale(&Scalar::from_int(-1)));
}

#[test]
fn constant_sn_inputs_give_zero() {
    let q = Multivector::vector(&[one(2), one(2)]).unwrap();
    assert!(sn_bracket(&bivector12(), &q).unwrap().is_zero());
}

/// `[X_1∧…∧X_p, Y_1∧…∧Y_q] = Σ (-1)^{i+j} [X_i,Y_j] ∧ X_1…X̂_i…X_p ∧ Y_1…Ŷ_j…Y_q`.
fn double_sum_sn(xs: &[Vec<SuperPoly>], ys: &[Vec<SuperPoly>]) -> Multivector {
    let dim = xs[0].len();
    let wedge = |vs: Vec<&Vec<SuperPoly>>| {
        vs.into_iter().fold(Multivector::from_components(dim, 0, [(vec![], one(dim))]).unwrap(), |acc, v| {
            wedge_multivectors(&acc, &Multivector::vector(v).unwrap()).unwrap()
        })
    };
    let mut acc = Multivector::zero(dim, xs.len() + ys.len() - 1);
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            let br = oracle::lie_bracket(x, y).unwrap();
            let mut factors = vec![&br];
            factors.extend(xs.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, v)| v));
            factors.extend(ys.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v));
            let term = wedge(factors);
            acc = if (i + j) % 2 == 0 { acc.add(&term).unwrap() } else { acc.sub(&term).unwrap() };
        }
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sn_matches_double_sum_on_wedges_of_fields(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let p = r.gen_range(1..=2usize);
        let q = r.gen_range(1..=2usize);
        let xs: Vec<_> = (0..p).map(|_| gen::vector_field(&mut r, dim, 1)).collect();
        let ys: Vec<_> = (0..q).map(|_| gen::vector_field(&mut r, dim, 1)).collect();
        let wedge = |vs: &[Vec<SuperPoly>]| vs.iter().fold(
            Multivector::from_components(dim, 0, [(vec![], one(dim))]).unwrap(),
            |acc, v| wedge_multivectors(&acc, &Multivector::vector(v).unwrap()).unwrap(),
        );
        prop_assert_eq!(sn_bracket(&wedge(&xs), &wedge(&ys)).unwrap(), double_sum_sn(&xs, &ys));
    }

    #[test]
    fn contraction_is_a_bracket_with_the_hat(seed in any::<u64>(), dim in 2usize..=4) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let engine = Engine::new(SymplecticContext::standard(dim / 2).unwrap());
        let dim = engine.dim();
        let kd = r.gen_range(0..=dim.min(2));
        let l = r.gen_range(0..=dim);
        let k = gen::sparse_vv_form(&mut r, dim, kd, 2, 3);
        let theta = gen::form(&mut r, dim, l, 2);
        let lhs = engine.epb(&vvform_to_super(&k), &form_to_super(&theta)).unwrap().scale(&Scalar::i());
        let rhs = form_to_super(&contraction(&k, &theta).unwrap()).scale(&Scalar::sign(kd as i64));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn contraction_by_vector_field_is_interior_product() {
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let v = gen::vector_field(&mut r, 4, 2);
        let k = VectorValuedForm::from_vector(&Multivector::vector(&v).unwrap()).unwrap();
        let l = r.gen_range(0..=4);
        let theta = gen::form(&mut r, 4, l, 2);
        assert_eq!(contraction(&k, &theta).unwrap(), oracle::interior(&v, &theta).unwrap());
    }
}

#[test]
fn identity_contraction_multiplies_by_degree() {
    let mut r = ChaCha8Rng::seed_from_u64(4);
    for l in 0..=4 {
        let theta = gen::form(&mut r, 4, l, 2);
        let got = contraction(&VectorValuedForm::identity(4), &theta).unwrap();
        assert_eq!(got, theta.scale(&Scalar::from_int(l as i64)));
    }
}

#[test]
fn contraction_past_top_degree_is_zero() {
    let k = VectorValuedForm::from_components(2, 2, [(1, vec![1, 2], one(2))]).unwrap();
    let theta = DifferentialForm::from_components(2, 2, [(vec![1, 2], one(2))]).unwrap();
    assert!(contraction(&k, &theta).unwrap().is_zero());
}

#[test]
fn generalized_lie_of_vector_field_is_lie_derivative() {
    let mut r = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let v = gen::vector_field(&mut r, 2, 2);
        let k = VectorValuedForm::from_vector(&Multivector::vector(&v).unwrap()).unwrap();
        let l = r.gen_range(0..=2);
        let theta = gen::form(&mut r, 2, l, 2);
        assert_eq!(generalized_lie(&k, &theta).unwrap(), oracle::lie_form(&v, &theta).unwrap());
    }
}

#[test]
fn fn_of_vector_fields_is_lie_bracket() {
    let mut r = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..5 {
        let v = gen::vector_field(&mut r, 2, 2);
        let w = gen::vector_field(&mut r, 2, 2);
        let kv = VectorValuedForm::from_vector(&Multivector::vector(&v).unwrap()).unwrap();
        let kw = VectorValuedForm::from_vector(&Multivector::vector(&w).unwrap()).unwrap();
        let got = fn_bracket(&kv, &kw).unwrap().to_vector().unwrap().vector_components().unwrap();
        assert_eq!(got, oracle::lie_bracket(&v, &w).unwrap());
    }
}

#[test]
fn fn_of_identity_with_itself_vanishes() {
    for dim in [2, 4] {
        let id = VectorValuedForm::identity(dim);
        assert!(fn_bracket(&id, &id).unwrap().is_zero());
    }
}

fn k12() -> VectorValuedForm {
    // dφ¹ ⊗ ∂_2
    VectorValuedForm::from_components(2, 1, [(2, vec![1], one(2))]).unwrap()
}

fn v21() -> VectorValuedForm {
    // dφ² ⊗ ∂_1
    VectorValuedForm::from_components(2, 1, [(1, vec![2], one(2))]).unwrap()
}

#[test]
fn fn_of_constant_one_forms() {
    // Both are constant, so the bracket vanishes.
    assert!(fn_bracket(&k12(), &v21()).unwrap().is_zero());
}

#[test]
fn ungraded_lie_derivative_has_no_fn_solution() {
    // L_K = i_K d + d i_K with the plain commutator
    let literal = |k: &VectorValuedForm, theta: &DifferentialForm| {
        let a = contraction(k, &d(theta))?;
        if theta.degree() == 0 {
            return Ok(a);
        }
        a.add(&d(&contraction(k, theta)?))
    };
    let err = solve_fn_with(&literal, Commutator::Plain, &k12(), &v21()).unwrap_err();
    assert!(matches!(err, Error::NoSolution(_)), "{err}");
    assert!(solve_fn_with(&generalized_lie, Commutator::Graded, &k12(), &v21()).is_ok());
}

#[test]
fn nr_examples() {
    let id = VectorValuedForm::identity(2);
    assert!(nr_bracket(&id, &id).unwrap().is_zero());
    assert!(nr_bracket(&VectorValuedForm::zero(2, 1), &k12()).unwrap().is_zero());
    assert!(matches!(
        nr_bracket(&VectorValuedForm::zero(2, 0), &VectorValuedForm::zero(2, 0)),
        Err(Error::InvalidRank(_))
    ));
}

#[test]
fn nr_with_identity_scales_by_form_degree_minus_one() {
    let mut r = ChaCha8Rng::seed_from_u64(8);
    for fd in 1..=3 {
        let v = gen::sparse_vv_form(&mut r, 4, fd, 2, 3);
        let got = nr_bracket(&VectorValuedForm::identity(4), &v).unwrap();
        assert_eq!(got, v.scale(&Scalar::from_int(fd as i64 - 1)), "form degree {fd}");
    }
}

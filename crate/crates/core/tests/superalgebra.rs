use gradedcartan::superalgebra::{Grade, Parity, SuperPoly};
use gradedcartan::textio::parse_poly;
use gradedcartan::Scalar;

fn p(text: &str) -> SuperPoly {
    parse_poly(text, 2).unwrap()
}

#[test]
fn addition() {
    assert_eq!(&p("c1") + &SuperPoly::zero(2), p("c1"));
    assert!((&p("c1") + &p("c1").scale(&Scalar::from_int(-1))).is_zero());
    assert_eq!(&p("phi1*c2") + &p("phi1*c2"), p("2*phi1*c2"));
}

#[test]
fn multiplication() {
    let c1 = SuperPoly::c(2, 1).unwrap();
    let c2 = SuperPoly::c(2, 2).unwrap();
    assert_eq!(&c1 * &c2, SuperPoly::c_product(2, &[1, 2]).unwrap());
    assert_eq!(&c2 * &c1, -SuperPoly::c_product(2, &[1, 2]).unwrap());
    assert!((&c1 * &c1).is_zero());
    let lhs =
        &(&SuperPoly::phi(2, 1).unwrap() * &c1) * &(&SuperPoly::phi(2, 2).unwrap() * &SuperPoly::cbar(2, 2).unwrap());
    let mono = lhs.terms().next().unwrap().0.clone();
    assert_eq!(lhs.len(), 1);
    assert_eq!((mono.phi_exp(1), mono.phi_exp(2), mono.c_indices(), mono.cbar_indices()), (1, 1, vec![1], vec![2]));
    assert_eq!(lhs.coeff(&mono), Scalar::one());
}

#[test]
fn even_derivatives() {
    assert_eq!(p("phi1*phi2").deriv_phi(1).unwrap(), p("phi2"));
    assert!(p("c1").deriv_phi(1).unwrap().is_zero());
    assert_eq!(p("l1^2").deriv_lambda(1).unwrap(), p("2*l1"));
}

/// Left derivative by moving `c^a` to the front one transposition at a time.
fn strike_by_transpositions(word: &[usize], a: usize) -> Option<(Vec<usize>, i64)> {
    let pos = word.iter().position(|&x| x == a)?;
    let rest = word.iter().copied().filter(|&x| x != a).collect();
    Some((rest, if pos % 2 == 0 { 1 } else { -1 }))
}

#[test]
fn left_grassmann_derivatives() {
    assert_eq!(p("c1*c2").deriv_c(1).unwrap(), p("c2"));
    assert_eq!(p("c1*c2").deriv_c(2).unwrap(), p("-c1"));
    assert!(p("phi1").deriv_c(1).unwrap().is_zero());
    for word in [vec![1, 2], vec![2, 1], vec![1, 2, 3], vec![3, 1, 2, 4], vec![4, 3, 2, 1]] {
        let poly = word.iter().fold(SuperPoly::one(4), |acc, &i| &acc * &SuperPoly::c(4, i).unwrap());
        for a in 1..=4 {
            let want = match strike_by_transpositions(&word, a) {
                Some((rest, s)) => rest
                    .iter()
                    .fold(SuperPoly::one(4), |acc, &i| &acc * &SuperPoly::c(4, i).unwrap())
                    .scale(&Scalar::from_int(s)),
                None => SuperPoly::zero(4),
            };
            assert_eq!(poly.deriv_c(a).unwrap(), want, "word {word:?}, a = {a}");
        }
    }
}

#[test]
fn grading() {
    assert_eq!(p("c1*cb2").grade(), Grade { parity: Some(Parity::Even), ghost: Some(0) });
    assert_eq!(p("c1").grade(), Grade { parity: Some(Parity::Odd), ghost: Some(1) });
    assert_eq!(p("c1 + c1*c2").grade(), Grade { parity: None, ghost: None });
}

#[test]
fn index_out_of_range_is_rejected() {
    assert!(SuperPoly::phi(2, 3).is_err());
    assert!(SuperPoly::c(2, 0).is_err());
}

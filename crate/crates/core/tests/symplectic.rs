use gradedcartan::textio::parse_poly;
use gradedcartan::{Error, SuperPoly, SymplecticContext};
use num_bigint::BigInt;
use num_rational::BigRational;

fn p(text: &str) -> SuperPoly {
    parse_poly(text, 2).unwrap()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn hamiltonian_vector_fields() {
    let ctx = SymplecticContext::standard(1).unwrap();
    let h = ctx.hamiltonian_vector_field(&p("(phi1^2 + phi2^2)/2")).unwrap();
    assert_eq!(h, vec![p("phi2"), p("-phi1")]);
    assert!(ctx.hamiltonian_vector_field(&p("7")).unwrap().iter().all(SuperPoly::is_zero));
    assert_eq!(ctx.hamiltonian_vector_field(&p("phi1*phi2")).unwrap(), vec![p("phi1"), p("-phi2")]);
    assert!(matches!(ctx.hamiltonian_vector_field(&p("c1")), Err(Error::NotPhiOnly(_))));
}

#[test]
fn poisson_brackets() {
    let ctx = SymplecticContext::standard(1).unwrap();
    assert_eq!(ctx.poisson_bracket(&p("phi1"), &p("phi2")).unwrap(), p("1"));
    let f = p("phi1^3*phi2 + 2*phi2");
    assert!(ctx.poisson_bracket(&f, &f).unwrap().is_zero());
    assert_eq!(ctx.poisson_bracket(&p("phi1"), &p("(phi1^2 + phi2^2)/2")).unwrap(), p("phi2"));
}

#[test]
fn explicit_omega() {
    let ctx = SymplecticContext::from_upper(vec![vec![q(0), q(2)], vec![q(-2), q(0)]]).unwrap();
    assert!(!ctx.is_standard());
    assert_eq!(*ctx.lower(1, 2), BigRational::new(BigInt::from(-1), BigInt::from(2)));
    for rows in [
        vec![vec![q(0), q(1)], vec![q(1), q(0)]],
        vec![vec![q(0), q(0)], vec![q(0), q(0)]],
        vec![vec![q(0), q(1), q(0)], vec![q(-1), q(0), q(0)], vec![q(0), q(0), q(0)]],
    ] {
        assert!(matches!(SymplecticContext::from_upper(rows), Err(Error::MalformedOmega(_))));
    }
}

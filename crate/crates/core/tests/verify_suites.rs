use gradedcartan::epb::{epb, Engine, FlatCharge};
use gradedcartan::superalgebra::{Parity, SuperPoly};
use gradedcartan::verify::{self, Env};
use gradedcartan::{Result, Scalar};

fn failures(reports: &[verify::SuiteReport]) -> Vec<String> {
    reports
        .iter()
        .filter(|r| !r.ok())
        .map(|r| format!("{}: {}", r.name, r.first_failure.clone().unwrap_or_default()))
        .collect()
}

#[test]
fn all_suites_pass() {
    let env = Env::standard();
    let reports = verify::run_all(&env, 7, 6);
    assert_eq!(reports.len(), verify::suites().len());
    let bad = failures(&reports);
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn reports_are_deterministic() {
    let env = Env::standard();
    let suite = verify::find("graded-axioms").unwrap();
    let a = verify::run_suite(&suite, &env, 99, 4);
    let b = verify::run_suite(&suite, &env, 99, 4);
    assert_eq!(a, b);
    assert_eq!(a.passed, 4);
}

fn odd_odd_sign_flip(a: &SuperPoly, b: &SuperPoly) -> Result<SuperPoly> {
    let r = epb(a, b)?;
    let odd = |p: &SuperPoly| p.grade().parity == Some(Parity::Odd);
    Ok(if odd(a) && odd(b) { r.scale(&Scalar::from_int(-1)) } else { r })
}

fn doubled(a: &SuperPoly, b: &SuperPoly) -> Result<SuperPoly> {
    Ok(epb(a, b)?.scale(&Scalar::from_int(2)))
}

#[test]
fn corrupted_brackets_are_detected() {
    for bad in [odd_odd_sign_flip as fn(&SuperPoly, &SuperPoly) -> Result<SuperPoly>, doubled] {
        let env = Env::new(None, &|ctx| Engine::new(ctx).with_bracket(bad));
        let reports = verify::run_all(&env, 7, 3);
        assert!(!failures(&reports).is_empty());
    }
}

#[test]
fn wrong_flat_charge_fails_musical_suite() {
    let env = Env::new(None, &|ctx| Engine::new(ctx).with_flat_charge(FlatCharge::Kbar));
    let report = verify::run_suite(&verify::find("musical-maps").unwrap(), &env, 7, 5);
    assert!(!report.ok());
}

use gradedcartan::textio::{load_workspace, parse_poly, print_canonical, save_workspace, ParseErrorKind, Value};
use gradedcartan::{ChargeSet, Error, Scalar, SuperPoly, SymplecticContext};

fn p(text: &str) -> SuperPoly {
    parse_poly(text, 2).unwrap()
}

#[test]
fn parse_examples() {
    let want = &SuperPoly::c_product(2, &[1, 2]).unwrap() + &SuperPoly::phi(2, 1).unwrap().scale(&Scalar::i());
    assert_eq!(p("c1*c2 + I*phi1"), want);
    assert_eq!(p("c2*c1"), -SuperPoly::c_product(2, &[1, 2]).unwrap());
    match parse_poly("c1^2", 2) {
        Err(Error::Parse(e)) => assert!(matches!(e.kind, ParseErrorKind::OddPower(_))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn parse_errors() {
    assert!(matches!(parse_poly("phi3", 2), Err(Error::IndexOutOfRange { index: 3, dim: 2 })));
    assert!(matches!(parse_poly("x1", 2), Err(Error::UnknownName(_))));
    assert!(matches!(parse_poly("phi1/0", 2), Err(Error::Parse(_))));
    assert!(matches!(parse_poly("phi1/phi2", 2), Err(Error::Parse(_))));
    match parse_poly("phi1 + * c1", 2) {
        Err(Error::Parse(e)) => assert_eq!((e.line, e.column), (1, 8)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn printing() {
    let ch = ChargeSet::new(&SymplecticContext::standard(1).unwrap());
    assert_eq!(print_canonical(&ch.q), "I*c1*l1 + I*c2*l2");
    assert_eq!(print_canonical(&SuperPoly::zero(2)), "0");
    assert_eq!(print_canonical(&p("-phi1 + 1/2*c1*c2")), "-phi1 + 1/2*c1*c2");
}

#[test]
fn print_then_parse_is_idempotent() {
    for text in ["c2*c1 - 3*phi2*phi1^2", "(1 + I)*(cb1 + l2)*c1", "-(phi1 - phi2)^3/4"] {
        let once = print_canonical(&p(text));
        assert_eq!(print_canonical(&p(&once)), once);
    }
}

#[test]
fn minimal_workspace() {
    let ws = load_workspace("gradedcartan-v1\ndim 1\nlet H := (phi1^2 + phi2^2)/2\n").unwrap();
    assert!(ws.ctx.is_standard());
    assert_eq!(ws.get("H").unwrap(), &Value::Poly(p("1/2*phi1^2 + 1/2*phi2^2")));
}

#[test]
fn workspace_rejections() {
    let bad = [
        ("dim 1\n", "missing header"),
        ("gradedcartan-v1\ndim 1\nomega 0 1 ; 1 0\n", "symmetric omega"),
        ("gradedcartan-v1\ndim 1\nlet A := 1\nlet A := 2\n", "duplicate"),
        ("gradedcartan-v1\ndim 1\nlet A := B\nlet B := 2\n", "forward reference"),
        ("gradedcartan-v1\nlet A := 1\ndim 1\n", "dim not first"),
        ("gradedcartan-v1\ndim 1\ndim 1\n", "dim twice"),
    ];
    for (text, why) in bad {
        assert!(load_workspace(text).is_err(), "{why}");
    }
    assert!(matches!(load_workspace("gradedcartan-v1\ndim 1\nomega 0 1 ; 1 0\n"), Err(Error::MalformedOmega(_))));
    assert!(matches!(load_workspace("gradedcartan-v1\ndim 1\nlet A := 1\nlet A := 2\n"), Err(Error::DuplicateName(_))));
}

const TEN: &str = "gradedcartan-v1\r
# a comment line\r
dim 2\r
omega 0 2 0 0 ; -2 0 0 0 ; 0 0 0 1 ; 0 0 -1 0\r
calibration lie: -1; sn: -1; fn: -1; nr: -I\r
let H := (phi1^2 + phi2^2)/2 + phi3*phi4   # energy\r
let G := H^2 - I*c1*cb2\r
let Q := I*c1*l1 + I*c2*l2\r
let F := form 2 { (1,2): phi1, (3,4): 1/3 }\r
let E := form 0 { (): phi2 }\r
let P := multivector 2 { (1,3): phi4 }\r
let V := vector { (1): phi2, (2): -phi1 }\r
let K := vvform 1 { (1; 2): 1, (4; 3): phi1*phi2 }\r
let Id := vvform 1 { (1; 1): 1, (2; 2): 1, (3; 3): 1, (4; 4): 1 }\r
let S := G + F*V\r
";

#[test]
fn ten_binding_round_trip() {
    let ws = load_workspace(TEN).unwrap();
    assert_eq!(ws.bindings.len(), 10);
    assert!(!ws.ctx.is_standard());
    assert!(ws.calibration.is_some());
    let saved = save_workspace(&ws);
    assert!(saved.starts_with("gradedcartan-v1\n"));
    assert!(!saved.contains('\r'));
    let again = load_workspace(&saved).unwrap();
    assert_eq!(again, ws);
    assert_eq!(save_workspace(&again), saved);
}

use std::path::PathBuf;
use std::process::{Command, Output};

fn workspace(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn shipped() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../workspaces/oscillator.gcw")
}

fn run(file: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gradedcartan")).arg("--file").arg(file).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const ONE: &str = "gradedcartan-v1\ndim 1\nlet F := phi1*phi2\nlet H := (phi1^2 + phi2^2)/2\n\
let P := multivector 2 { (1,2): 1 }\nlet X := vector { (1): phi1 }\nlet E := vector { (1): 1 }\n";

#[test]
fn exterior_derivative() {
    let o = run(&workspace("d.gcw", ONE), &["d", "F"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "phi2*c1 + phi1*c2\n");
}

#[test]
fn charges_for_one_degree_of_freedom() {
    let o = run(&workspace("charges.gcw", ONE), &["charges"]);
    assert_eq!(
        stdout(&o),
        "Q = I*c1*l1 + I*c2*l2\nQbar = I*cb1*l2 - I*cb2*l1\nQg = c1*cb1 + c2*cb2\nK = -c1*c2\nKbar = cb1*cb2\n"
    );
}

#[test]
fn tensor_outputs() {
    let ws = workspace("tensors.gcw", ONE);
    assert_eq!(stdout(&run(&ws, &["sn", "P", "X"])), "(1,2) : 1\n");
    assert_eq!(stdout(&run(&ws, &["liebracket", "X", "E"])), "(1) : -1\n");
    assert_eq!(stdout(&run(&ws, &["liebracket", "X", "X"])), "0\n");
    assert_eq!(stdout(&run(&ws, &["sharp", "H"])), "phi2*cb1 - phi1*cb2\n");
    assert_eq!(stdout(&run(&ws, &["eval", "c2*c1"])), "-c1*c2\n");
}

#[test]
fn user_errors_exit_with_one() {
    let ws = workspace("errors.gcw", ONE);
    for args in [&["eval", "nope"][..], &["eval", "phi1 +"], &["eval", "phi3"], &["sn", "c1", "P"]] {
        let o = run(&ws, args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
    let missing = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("does-not-exist.gcw");
    assert_eq!(run(&missing, &["charges"]).status.code(), Some(1));
    let bad = workspace("bad.gcw", "gradedcartan-v1\ndim 1\nomega 0 1 ; 1 0\n");
    assert_eq!(run(&bad, &["charges"]).status.code(), Some(1));
}

#[test]
fn wrong_stored_calibration_is_internal() {
    let ws = workspace("calib.gcw", "gradedcartan-v1\ndim 1\ncalibration lie: 1; sn: -1; fn: -1; nr: -I\n");
    assert_eq!(run(&ws, &["calibrate"]).status.code(), Some(2));
}

#[test]
fn calibrate_prints_constants() {
    let o = run(&workspace("calibrate.gcw", ONE), &["calibrate"]);
    assert_eq!(stdout(&o), "k_lie = -1\nk_sn = -1\nk_fn = -1\nk_nr = -I\n");
}

#[test]
fn verify_passes_on_shipped_workspace_and_is_deterministic() {
    let a = run(&shipped(), &["verify", "--seed", "42", "--cases", "50"]);
    assert!(a.status.success(), "{}", stdout(&a));
    assert!(stdout(&a).lines().all(|l| l.starts_with("PASS")));
    let b = run(&shipped(), &["verify", "--seed", "42", "--cases", "50"]);
    assert_eq!(a.stdout, b.stdout);
}

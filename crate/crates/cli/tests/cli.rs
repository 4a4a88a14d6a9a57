use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const NABLA_2: &str = r#"{"p":5,"divisor":["0"],"rank":1,"matrix":[["3"]],"kind":"connection"}"#;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_logdr"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let out = run(&[args, &["--json"]].concat(), stdin);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn nabla_2_has_zero_p_curvature() {
    let r = json(&["pcurv"], NABLA_2);
    assert_eq!(r["results"]["psi"], serde_json::json!([["0"]]));
    assert_eq!(r["results"]["verdict"], "p-curvature zero");
    assert_eq!(r["seed"], 0);
}

#[test]
fn nabla_2_solutions() {
    let r = json(&["sol"], NABLA_2);
    assert_eq!(r["results"]["generators"], serde_json::json!([["x^2"]]));
    assert_eq!(r["results"]["parabolic"]["points"][0]["jumps"], serde_json::json!([2]));
}

#[test]
fn p_curvature_of_x_in_characteristic_two() {
    let r = json(&["pcurv"], r#"{"p":2,"divisor":["0"],"rank":1,"matrix":[["x"]]}"#);
    assert_eq!(r["results"]["psi"], serde_json::json!([["x^2"]]));
}

#[test]
fn reports_are_deterministic() {
    let input = r#"{"p":3,"divisor":["0","1"],"rank":2,"matrix":[["x","1"],["2","x^2"]]}"#;
    for cmd in ["pcurv", "residues", "sol", "descent", "spectral", "dcz"] {
        let a = run(&[cmd, "--seed", "7"], input);
        let b = run(&[cmd, "--seed", "7"], input);
        assert_eq!(a.status.code(), Some(0), "{cmd}");
        assert_eq!(a.stdout, b.stdout, "{cmd}");
    }
}

#[test]
fn extension_field_input() {
    let input = r#"{"p":2,"ext_modulus":"1 + t + t^2","divisor":["0","[t]"],"rank":1,"matrix":[["[t] x"]]}"#;
    let r = json(&["dcz"], input);
    assert_eq!(r["input"]["divisor"], serde_json::json!(["0", "[t]"]));
    assert_eq!(r["results"]["agrees"], true);
}

#[test]
fn higgs_spectral_data() {
    let input = r#"{"p":3,"divisor":["0"],"rank":2,"matrix":[["0","1"],["0","0"]],"kind":"higgs"}"#;
    let r = json(&["spectral"], input);
    assert_eq!(r["results"]["hitchin"]["polynomial"], "λ^2");
    assert_eq!(r["results"]["spectral"]["regular"], true);
    assert_eq!(r["results"]["spectral"]["rank"], "1");
}

#[test]
fn input_errors_exit_with_two() {
    let cases = [
        r#"{"p":4,"divisor":["0"],"rank":1,"matrix":[["x"]]}"#,
        r#"{"p":3,"divisor":["0","3"],"rank":1,"matrix":[["x"]]}"#,
        r#"{"p":3,"divisor":["0"],"rank":1,"matrix":[["x +* 2"]]}"#,
        r#"{"p":3,"divisor":["0"],"rank":2,"matrix":[["x"]]}"#,
        r#"{"p":3,"divisor":["0"],"#,
    ];
    for c in cases {
        let out = run(&["pcurv"], c);
        assert_eq!(out.status.code(), Some(2), "{c}");
        assert!(!out.stderr.is_empty());
    }
    let out = run(&["pcurv", "--p-cap", "3"], r#"{"p":5,"divisor":["0"],"rank":1,"matrix":[["x"]]}"#);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["pcurv"], r#"{"p":3,"divisor":["0"],"rank":1,"matrix":[["x"]],"kind":"higgs"}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_quietly() {
    let out = run(&["verify", "--seed", "0", "--quiet"], "");
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
}

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use stokes_core::cech::ring::parse_matrix;

fn stokes(args: &[&str], stdin: Option<&str>) -> (i32, Value) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stokes"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    let Output { status, stdout, .. } = child.wait_with_output().unwrap();
    let code = status.code().unwrap_or(-1);
    let v = if stdout.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&stdout).expect("stdout is JSON")
    };
    (code, v)
}

fn strings(v: &Value) -> Vec<Vec<String>> {
    serde_json::from_value(v.clone()).unwrap()
}

#[test]
fn directions_of_the_example() {
    let (code, v) = stokes(&["directions"], None);
    assert_eq!(code, 0);
    assert_eq!(v["directions"], serde_json::json!(["1/2·π", "3/2·π"]));
}

#[test]
fn symbolic_stokes_matrices_reparse() {
    let (code, v) = stokes(&["stokes", "--symbolic"], None);
    assert_eq!(code, 0);
    let n_pi = strings(&v["N_pi"]);
    assert_eq!(n_pi, vec![vec!["-1", "1 - S·T^-1"], vec!["0", "-S·T^-1"]]);
    for key in ["N_pi", "N_0", "S_0^1", "S_1^0", "total_monodromy"] {
        let m = parse_matrix(&strings(&v[key])).unwrap();
        let back: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
        assert_eq!(back, strings(&v[key]), "{key}");
    }
}

#[test]
fn numeric_stokes_with_a_given_rep() {
    let doc = r#"{"rank": 1, "components": [], "rep": {"backend": "matrix", "S": [["2"]], "T": [["3"]], "U": [["5"]]}}"#;
    let (code, v) = stokes(&["stokes", "--numeric", "--config", "-"], Some(doc));
    assert_eq!(code, 0);
    assert_eq!(strings(&v["N_pi"]), vec![vec!["-1", "1/3"], vec!["0", "-2/3"]]);
    assert_eq!(strings(&v["S_1^0"]), vec![vec!["-15/2", "0"], vec!["-5/2", "-5"]]);
}

#[test]
fn decompose_empty_config() {
    let (code, v) = stokes(&["decompose", "--config", "-"], Some(r#"{"rank": 1, "components": []}"#));
    assert_eq!(code, 0);
    assert_eq!(v, serde_json::json!([{"factor": "0", "rank": 0}]));
}

#[test]
fn decompose_a_config_document() {
    let doc = r#"{"rank": 2, "components": [
        {"kind": "at_infinity", "q": 2, "mu0": {"modulus": "3/2", "argument_pi": "1/2"}},
        {"kind": "elsewhere", "phi_dim": 1}
    ]}"#;
    let (code, v) = stokes(&["decompose", "--config", "-"], Some(doc));
    assert_eq!(code, 0);
    assert_eq!(v[0]["rank"], 1);
    assert_eq!(v[1]["factor"], "(3/2·e^(i·1/2·π))/t^2");
    assert_eq!(v[1]["rank"], 2);
}

#[test]
fn order_and_dims() {
    let (code, v) = stokes(&["order", "--theta", "1"], None);
    assert_eq!(code, 0);
    assert_eq!(v["order"], serde_json::json!(["1/t", "0"]));
    let (code, v) = stokes(&["dims", "--grid", "4", "--rank", "2"], None);
    assert_eq!(code, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["dims"]["0"], 2);
    assert_eq!(rows[0]["dims"]["1/t"], 4);
    assert_eq!(rows[1]["dims"]["0"], Value::Null);
    assert_eq!(rows[2]["dims"]["0"], 4);
}

#[test]
fn resolve_and_fiber_reports() {
    let (code, v) = stokes(&["resolve"], None);
    assert_eq!(code, 0);
    let charts: Vec<&str> = v[1]["charts"].as_array().unwrap().iter().map(|c| c["chart"].as_str().unwrap()).collect();
    assert_eq!(charts, ["u1", "~u1", "u'1", "~u'1"]);
    let (code, v) = stokes(&["fiber", "--theta", "0", "--rank", "3"], None);
    assert_eq!(code, 0);
    assert_eq!(v[0]["h1c_dimension"], 3);
    assert_eq!(v[1]["h1c_dimension"], 6);
}

#[test]
fn validation_errors_exit_one() {
    let (code, v) = stokes(&["order", "--theta", "1/2"], None);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "StokesDirectionHit");
    let doc = r#"{"rank": 1, "components": [], "rep": {"backend": "matrix", "S": [["0"]], "T": [["1"]], "U": [["1"]]}}"#;
    let (code, v) = stokes(&["stokes", "--numeric", "--config", "-"], Some(doc));
    assert_eq!(code, 1);
    assert_eq!(v["error"]["kind"], "SingularMatrix");
}

#[test]
fn malformed_input_exits_two() {
    let (code, _) = stokes(&["dims", "--config", "-"], Some("{not json"));
    assert_eq!(code, 2);
    let (code, _) = stokes(&["order", "--theta", "abc"], None);
    assert_eq!(code, 2);
    let (code, _) = stokes(&["frobnicate"], None);
    assert_eq!(code, 2);
    let (code, _) = stokes(&["decompose", "--config", "-"], Some(r#"{"rank": 1, "components": [{"kind": "nowhere"}]}"#));
    assert_eq!(code, 2);
}

#[test]
fn verify_passes() {
    let (code, v) = stokes(&["verify", "--seed", "3"], None);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["passed"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 8);
}

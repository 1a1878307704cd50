//! End-to-end tests of the `torus-spectra` binary: outputs, JSON shape and
//! exit codes.

use std::process::{Command, Output};

use serde_json::Value;
use torus_spectra::VALIDITY_BANNER;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torus-spectra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).expect("valid JSON");
    let obj = v.as_object().unwrap();
    let (last, banner) = obj.iter().next_back().unwrap();
    assert_eq!((last.as_str(), banner.as_str()), ("banner", Some(VALIDITY_BANNER)));
    v
}

#[test]
fn exterior_square_spectrum() {
    let o = run(&["spectrum", "--group", "A3", "--highest", "[0,1,0]", "--epsilon", "a,a,1/a,1/a"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[1..4], &["a^-2 1", "1 4", "a^2 1"]);
    assert!(lines[4].starts_with("classification: AlmostSimple"));
    assert_eq!(lines.last(), Some(&VALIDITY_BANNER));
}

#[test]
fn text_and_json_agree() {
    let v = json(&["spectrum", "--highest", "A3:[0,1,0]", "--epsilon", "a,a,1/a,1/a"]);
    assert_eq!(v["classification"], "AlmostSimple");
    assert_eq!(v["total"], 6);
    let pairs: Vec<(String, u64)> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["value"].as_str().unwrap().to_string(), e["multiplicity"].as_u64().unwrap()))
        .collect();
    let text = stdout(&run(&["spectrum", "--highest", "A3:[0,1,0]", "--epsilon", "a,a,1/a,1/a"]));
    for (value, m) in pairs {
        assert!(text.lines().any(|l| l == format!("{value} {m}")), "{value}");
    }
}

#[test]
fn element_json_input() {
    let element = r#"{"omega_values":[{"torsion":"0","free":[1]},{"torsion":"0","free":[2]},{"torsion":"0","free":[1]}]}"#;
    let v = json(&["spectrum", "--group", "A3", "--highest", "[0,1,0]", "--element", element]);
    assert_eq!(v["max_multiplicity"], 4);
}

#[test]
fn weights_json_shape() {
    let v = json(&["weights", "--highest", "A2:[1,1]"]);
    assert_eq!(v["dim"], 8);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 7);
    assert!(entries.contains(&serde_json::json!(["[0,0]", 2])));
}

#[test]
fn levels_json_shape() {
    let v = json(&["levels", "--group", "C4"]);
    assert_eq!(v["family"], "C");
    assert_eq!(v["rank"], 4);
    assert_eq!(v["levels"]["1"], serde_json::json!(["[0,0,0,0]", "[1,0,0,0]"]));
    assert_eq!(v["levels"]["2"], serde_json::json!(["[0,0,1,0]", "[0,1,0,0]"]));
}

#[test]
fn verify_checks_pass() {
    for args in [
        &["verify", "--check", "level-table", "--family", "D", "--rank", "5"][..],
        &["verify", "--check", "witnesses"],
        &["verify", "--check", "c99", "--family", "A", "--rank", "3", "--dim-bound", "20", "--depth", "2"],
        &["verify", "--check", "natural", "--family", "B", "--rank", "3", "--samples", "100"],
    ] {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}\n{}", stdout(&o));
        assert_eq!(stdout(&o).lines().last(), Some(VALIDITY_BANNER));
    }
}

#[test]
fn verify_is_reproducible() {
    let args = ["--json", "verify", "--check", "thm12", "--family", "C", "--rank", "2", "--seed", "7"];
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["weights", "--highest", "X9:[1]"]).status.code(), Some(2));
    assert_eq!(run(&["weights", "--highest", "A2:[1,-1]"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--highest", "G2:[1,0]", "--epsilon", "a,b"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    let o = run(&["--max-dim", "100", "weights", "--highest", "E8:[1,0,0,0,0,0,0,0]"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds"));
    assert_eq!(run(&["--orbit-bound", "5", "weights", "--highest", "A2:[1,1]"]).status.code(), Some(3));
}

#[test]
fn torsion_is_flagged() {
    let v = json(&["spectrum", "--highest", "C2:[0,1]", "--epsilon", "1,-1"]);
    assert!(v["torsion_note"].as_str().unwrap().contains("dividing 2"));
    let v = json(&["spectrum", "--highest", "C2:[0,1]", "--epsilon", "a,a"]);
    assert!(v.get("torsion_note").is_none());
}

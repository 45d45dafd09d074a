//! End-to-end runs of the `tame-sl2` binary.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tame-sl2"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn example(name: &str) -> String {
    let out = run(&["examples", name], None);
    assert!(out.status.success());
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn reduce_example_g_certifies_a_word() {
    let g = example("example-g");
    let out = run(&["reduce", "-"], Some(&g));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["verdict"]["linear"].is_array());
    let word = serde_json::to_string(&v["certified_word"]).unwrap();
    let composed = run(&["compose", &format!("[{word}, {}]", example("example-g-inverse"))], None);
    assert_eq!(json_of(&composed)["is_identity"], true);
}

#[test]
fn compose_of_g_and_its_inverse_is_the_identity() {
    let payload = format!("[{}, {}]", example("example-g"), example("example-g-inverse"));
    let v = json_of(&run(&["compose", &payload], None));
    assert_eq!(v["is_identity"], true);
    assert_eq!(v["composition"]["components"][3], serde_json::json!([[[0, 0, 0, 1], "1"]]));
}

#[test]
fn verify_lists_the_four_failed_equations_for_anick() {
    let out = run(&["verify", "-"], Some(&example("anick")));
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["verdict"], "not_tame_within_budget");
    assert_eq!(v["failed_equations"].as_array().unwrap().len(), 4);
}

#[test]
fn batch_reduction_matches_sequential() {
    let payload = format!("[{}, {}, {}]", example("example-g"), example("example-g-inverse"), example("henon-2"));
    let par = run(&["reduce", "--batch", &payload], None);
    let seq = run(&["reduce", "--batch", "--sequential", &payload], None);
    assert!(par.status.success());
    assert_eq!(par.stdout, seq.stdout);
    assert_eq!(json_of(&par).as_array().unwrap().len(), 3);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["explore", "--depth", "1", "--format", "dot"], None);
    let b = run(&["explore", "--depth", "1", "--format", "dot"], None);
    assert!(a.status.success());
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("graph complex {"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn domain_errors_exit_with_two_and_a_payload() {
    let out = run(&["verify", r#"{"components": ["x1", "x2", "x3", "2*x4"]}"#], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "QuadricViolated");
    let out = run(&["grid", r#"{"N": "x1", "S": "x3", "E": "x4", "W": "x1"}"#], None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json_of(&out)["error"]["kind"], "WrongVariables");
}

#[test]
fn malformed_input_exits_with_one() {
    assert_eq!(run(&["verify", "{not json"], None).status.code(), Some(1));
    assert_eq!(run(&["verify", r#"{"components": ["x1"]}"#], None).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(run(&["classify", "-", "--format", "dot"], Some(&example("henon-1"))).status.code(), Some(1));
    assert_eq!(run(&["reduce", "-", "--budget-depth", "0"], Some(&example("example-g"))).status.code(), Some(1));
}

#[test]
fn classify_henon_words() {
    for (name, length) in [("henon-1", 2), ("henon-2", 4), ("henon-3", 6)] {
        let v = json_of(&run(&["classify", "-"], Some(&example(name))));
        assert_eq!(v["class"], "hyperbolic");
        assert_eq!(v["length"], length);
    }
}

#[test]
fn grid_and_resonance() {
    let v = json_of(&run(&["grid", r#"{"N": "x2", "S": "x3", "E": "x4", "W": "x1"}"#], None));
    assert_eq!(v["positions"].as_array().unwrap().len(), 25);
    let v = json_of(&run(&["resonance", r#"{"a": "2", "b": "1/2"}"#], None));
    assert_eq!((v["p"].as_i64(), v["q"].as_i64()), (Some(1), Some(1)));
    assert_eq!(v["hyperelliptic"]["commutes"], true);
    assert_eq!(v["hyperelliptic"]["isometry"]["class"], "hyperbolic");
    let v = json_of(&run(&["resonance", r#"{"a": "2", "b": "3"}"#], None));
    assert_eq!(v["resonant"], false);
    let v = json_of(&run(&["resonance", "--field", "qi", r#"{"a": ["0", "1"], "b": ["0", "1"]}"#], None));
    assert_eq!(v["resonant"], true);
}

#[test]
fn linearize_conjugated_involution() {
    let payload = r#"{"generators": [{"word": [
        {"elem": {"family": "E24", "P": "x3"}},
        {"orth": [["-1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","-1"]]},
        {"elem": {"family": "E24", "P": "-x3"}}
    ]}]}"#;
    let v = json_of(&run(&["linearize", payload], None));
    assert_eq!(v["order"], 2);
    assert_eq!(v["case"], "X1X3");
    let tri = r#"{"triangular": [["-x1 + x2^2", "x2", "x3"]]}"#;
    let v = json_of(&run(&["linearize", tri], None));
    assert_eq!(v["order"], 2);
}

#[test]
fn degree_report_is_labelled() {
    let v = json_of(&run(&["degree-report", "--count", "3"], None));
    assert_eq!(v["label"], "experimental evidence only");
    assert_eq!(v["components"], 12);
}

#[test]
fn config_file_rejects_unknown_fields() {
    let dir = std::env::temp_dir().join(format!("tame-sl2-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("good.json");
    let bad = dir.join("bad.json");
    std::fs::write(&good, r#"{"format": "pretty", "depth": 0}"#).unwrap();
    std::fs::write(&bad, r#"{"colour": true}"#).unwrap();
    let out = run(&["explore", "--config", good.to_str().unwrap()], None);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("1 group elements"));
    assert_eq!(run(&["explore", "--config", bad.to_str().unwrap()], None).status.code(), Some(1));
    std::fs::remove_dir_all(&dir).unwrap();
}

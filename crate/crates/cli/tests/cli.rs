use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).display().to_string()
}

/// Runs the binary, returning exit code, stdout and stderr.
fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_combhom")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    assert!(!out.is_empty(), "no output; stderr: {err}");
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn catalog_lists_specs() {
    let (code, v) = json(&["catalog"]);
    assert_eq!(code, 0);
    let specs: Vec<&str> = v.as_array().unwrap().iter().map(|e| e["spec"].as_str().unwrap()).collect();
    assert!(specs.contains(&"line:i:j"));
    assert!(specs.len() > 5);
}

#[test]
fn circle_has_one_free_generator() {
    let (code, v) = json(&["invariants", "circle:5"]);
    assert_eq!(code, 0);
    assert_eq!(v["components"], 1);
    assert_eq!(v["vertex_groups"][0]["abelian"]["rank"], 1);
    assert_eq!(v["vertex_groups"][0]["simplified"]["generators"], 1);
    let (code, text, _) = run(&["invariants", "circle:5", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("H1: Z\n"), "{text}");
}

#[test]
fn unknown_space_is_an_input_error() {
    let (code, _, err) = run(&["invariants", "nosuch:3"]);
    assert_eq!(code, 1);
    assert!(err.contains("unknown space"), "{err}");
}

#[test]
fn adjunction_verdicts_map_to_exit_codes() {
    let (code, v) = json(&["adjunction", &data("tables/z2.json")]);
    assert_eq!((code, v["verdict"].as_str()), (0, Some("pass")));
    let (code, _, err) = run(&["adjunction", &data("tables/broken_z3.json")]);
    assert_eq!(code, 1);
    assert!(err.contains("associativity"), "{err}");
    let (code, v) = json(&["adjunction", &data("tables/z3.json"), "--budget", "1"]);
    assert_eq!((code, v["verdict"].as_str()), (2, Some("inconclusive")));
}

#[test]
fn vankampen_wedge_is_free_of_rank_two() {
    let (code, v) = json(&["vankampen", &data("spans/wedge.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["side_a"]["components"][0]["abelian"]["rank"], 2);
}

#[test]
fn sweep_reports_rows_and_rejects_bad_eps() {
    let (code, v) = json(&["sweep", &data("blobs.csv"), "--eps", "5,6"]);
    assert_eq!(code, 0);
    let comps: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["components"].as_u64().unwrap()).collect();
    assert_eq!(comps, [2, 1]);
    let (code, v) = json(&["sweep", &data("ring.pgm"), "--eps", "1..2"]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"][0]["h1_rank"], 1);
    let (code, _, err) = run(&["sweep", &data("ring.pgm"), "--eps", "3,2"]);
    assert_eq!(code, 1);
    assert!(err.contains("increase"), "{err}");
}

#[test]
fn normalize_cancels_backtracks() {
    let (code, v) = json(&["normalize", "circle:5", "--path", "0,1,1,2,1,0,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["delay_normal_form"]["vertices"], serde_json::json!([0, 1, 2, 1, 0, 4]));
    assert_eq!(v["strong_normal_form"]["vertices"], serde_json::json!([0, 4]));
    let (code, _, _) = run(&["normalize", "circle:5", "--path", "0,2"]);
    assert_eq!(code, 1);
}

#[test]
fn oracle_agrees_on_a_circle() {
    let (code, v) = json(&["oracle", "circle:4"]);
    assert_eq!(code, 0);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["compared"], 16);
}

#[test]
fn out_writes_the_report_to_a_file() {
    let path = std::env::temp_dir().join(format!("combhom-cli-{}.json", std::process::id()));
    let (code, stdout, _) = run(&["invariants", "circle:3", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["space"], "circle:3");
}

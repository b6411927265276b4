use std::process::{Command, Output};

use serde_json::Value;

fn sumcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sumcat"))
        .args(args)
        .env_remove("SUMCAT_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

#[test]
fn semion_tables_as_json() {
    let o = sumcat(&["tables", "--N", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["N"], 1);
    assert_eq!(v["twist"], serde_json::json!(["0", "1/2"]));
    assert_eq!(v["braid"][1][1], "1/2");
    assert_eq!(v["assoc"][1][1][1], "1");
}

#[test]
fn csv_needs_a_directory() {
    let o = sumcat(&["tables", "--N", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let o = sumcat(&["tables", "--N", "2", "--format", "csv", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let twist = std::fs::read_to_string(dir.path().join("twist.csv")).unwrap();
    assert_eq!(twist, "a,twist,twist_41\n0,0,0\n1,1/4,1/2\n2,1,0\n3,1/4,1/2\n");
    let fusion = std::fs::read_to_string(dir.path().join("fusion.csv")).unwrap();
    assert_eq!(fusion.lines().count(), 17);
}

#[test]
fn csv_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_sumcat"))
        .args(["tables", "--N", "1", "--format", "csv"])
        .env("SUMCAT_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.path().join("assoc.csv").exists());
}

#[test]
fn markdown_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.md");
    let o = sumcat(&["tables", "--N", "1", "--format", "markdown", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(std::fs::read_to_string(path).unwrap().starts_with("# Rep0 V_L, N = 1"));
}

#[test]
fn verify_rep0_passes() {
    let o = sumcat(&["verify-rep0", "--N", "2", "--window", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["passed"], true);
}

#[test]
fn verify_base_reference_pentagon() {
    let o = sumcat(&["verify-base", "--N", "1", "--axiom", "pentagon"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["reports"][0]["tuples_checked"], 16);
}

#[test]
fn verify_base_heisenberg_needs_window() {
    assert_eq!(sumcat(&["verify-base", "--N", "1", "--base", "heisenberg"]).status.code(), Some(2));
    let o = sumcat(&["verify-base", "--N", "2", "--d", "3", "--base", "heisenberg", "--window", "-2:2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn failing_verification_dumps_a_counterexample() {
    let o = sumcat(&["verify-base", "--N", "1", "--alt-twist", "--axiom", "balancing"]);
    assert_eq!(o.status.code(), Some(1));
    let dump: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(dump[0]["failures"][0], serde_json::json!([[1], [1]]));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fail.json");
    let o = sumcat(&["verify-base", "--N", "1", "--alt-twist", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stderr.is_empty());
    let dump: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert!(dump.as_array().unwrap().iter().any(|r| r["axiom"] == "balancing"));
}

#[test]
fn completion_suite_is_deterministic() {
    let args = ["verify-completion", "--base", "cyclic:4", "--trials", "5", "--seed", "7"];
    let (a, b) = (sumcat(&args), sumcat(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(sumcat(&["verify-completion", "--base", "lattice-reference:2", "--trials", "3"]).status.code(), Some(0));
    assert_eq!(sumcat(&["verify-completion", "--base", "torus:2"]).status.code(), Some(2));
}

#[test]
fn algebra_both_modes() {
    for mode in ["symbolic", "window"] {
        let o = sumcat(&["verify-algebra", "--N", "2", "--mode", mode, "--window", "2"]);
        assert_eq!(o.status.code(), Some(0));
    }
}

#[test]
fn rep0_marks_non_local_modules() {
    let o = sumcat(&["rep0", "--N", "1", "--d", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    let local: Vec<bool> = v["modules"].as_array().unwrap().iter().map(|m| m["local"].as_bool().unwrap()).collect();
    assert_eq!(local, [true, false, true, false]);
}

#[test]
fn compare_reports_twist_conflict() {
    let o = sumcat(&["compare", "--N", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("note: twist differs"));
}

#[test]
fn usage_errors() {
    assert_eq!(sumcat(&["tables", "--N", "0"]).status.code(), Some(2));
    assert_eq!(sumcat(&["verify-rep0", "--N", "1", "--window", "3:1"]).status.code(), Some(2));
    assert_eq!(sumcat(&["verify-base", "--N", "1", "--axiom", "octagon"]).status.code(), Some(2));
    assert_eq!(sumcat(&["nonsense"]).status.code(), Some(2));
}

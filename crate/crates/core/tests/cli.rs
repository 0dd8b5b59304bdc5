use std::path::PathBuf;
use std::process::{Command, Output};

fn cropkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cropkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cropkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn synth_writes_the_circuit() {
    let perm = scratch("swap.json", r#"{"size":4,"images":[0,1,3,2]}"#);
    let out_file = perm.with_file_name("swap.crop");
    let o = cropkit(&["synth", "--perm", perm.to_str().unwrap(), "--out", out_file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("c1[x]"));
    assert_eq!(std::fs::read_to_string(&out_file).unwrap().trim(), "c1[x]");
    let back = cropkit(&["eval", out_file.to_str().unwrap(), "--backend", "perm"]);
    assert_eq!(stdout(&back).trim(), r#"{"images":[0,1,3,2],"size":4}"#);
}

#[test]
fn synth_rejects_odd_sizes() {
    let perm = scratch("three.json", r#"{"size":3,"images":[0,2,1]}"#);
    let o = cropkit(&["synth", "--perm", perm.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).to_lowercase().contains("power of two"));
}

#[test]
fn eval_on_each_backend() {
    let o = cropkit(&["eval", "c1[x]", "--backend", "gf2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(cropkit(&["equiv", "v ; v", "x", "--backend", "complex"]).status.code(), Some(0));
    assert_eq!(cropkit(&["equiv", "v ; v", "x", "--backend", "cyclo"]).status.code(), Some(0));
    assert_eq!(cropkit(&["eval", "z(1.0)", "--backend", "cyclo"]).status.code(), Some(2));
    assert_eq!(cropkit(&["eval", "h", "--backend", "perm"]).status.code(), Some(2));
}

#[test]
fn sleator_weinfurter_sides_agree() {
    let lhs = "c1[id1 + j] ; (id1 + c1[j])";
    let rhs = "c0[c1[j]] ; c1[c0[j]] ; c1[c1[j ; j]]";
    assert_eq!(cropkit(&["equiv", lhs, rhs, "--backend", "gf2"]).status.code(), Some(0));
    assert_eq!(cropkit(&["equiv", lhs, rhs]).status.code(), Some(0));
    // `j` is not a permutation
    assert_eq!(cropkit(&["equiv", lhs, rhs, "--backend", "perm"]).status.code(), Some(2));
    let o = cropkit(&["check", "sw"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn a_broken_script_is_rejected() {
    let mut script: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string("data/proofs/conjugation.json").unwrap()).unwrap();
    script["steps"][1]["path"] = serde_json::json!([0]);
    let path = scratch("broken.json", &script.to_string());
    assert_eq!(cropkit(&["check", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn axioms_report_counters() {
    let o = cropkit(&["--json", "axioms", "--backend", "perm", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["verdict"], "success");
    let run = report["counters"]["run"].as_u64().unwrap();
    assert!(run > 0);
    assert_eq!(report["counters"]["passed"].as_u64(), Some(run));
}

#[test]
fn gray_and_factor() {
    let o = cropkit(&["gray", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("110"));
    let m = scratch("cnot.json", "[[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]");
    let o = cropkit(&["factor", "--gf2", m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}

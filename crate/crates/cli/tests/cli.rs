use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn pospace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pospace")).args(args).env_remove("POSPACE_MAX_N").output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, value: Value) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, value.to_string()).unwrap();
    path
}

fn two_chain() -> Value {
    json!({"elements": ["a", "b"], "pairs": [["a", "b"]]})
}

#[test]
fn help_lists_every_theorem_id() {
    let out = pospace(&["--help"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for id in pospace::verify::MANIFEST.iter().map(|t| t.id) {
        assert!(text.contains(id), "help is missing {id}");
    }
}

#[test]
fn verify_effectiveness_passes() {
    let out = pospace(&["verify", "--theorem", "effectiveness", "--max-n", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let report = stdout_json(&out);
    assert_eq!(report["theorem_id"], "effectiveness");
    assert_eq!(report["failures"], json!([]));
    assert_eq!(report["instances"], 167);
    assert_eq!(report["budget"]["max_n"], 3);
    assert!(report.get("elapsed_ms").is_none());
}

#[test]
fn verify_timing_is_opt_in() {
    let out = pospace(&["verify", "--theorem", "negative_controls", "--timing"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_json(&out)["elapsed_ms"].is_u64());
}

#[test]
fn verify_output_is_byte_identical_across_worker_counts() {
    let run = |k: &str| pospace(&["verify", "--theorem", "pushout_theta", "--max-n", "3", "--parallel", k]).stdout;
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("4"));
}

#[test]
fn verify_writes_report_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.json");
    let out = pospace(&["verify", "--theorem", "cokernel_pair", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let report: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(report["failures"], json!([]));
}

#[test]
fn verify_all_runs_the_manifest() {
    let out = pospace(&["verify", "--theorem", "all", "--max-n", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let reports = stdout_json(&out);
    assert_eq!(reports.as_array().unwrap().len(), pospace::verify::MANIFEST.len());
}

#[test]
fn max_n_environment_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_pospace"))
        .args(["verify", "--theorem", "counting"])
        .env("POSPACE_MAX_N", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["budget"]["max_n"], 2);

    let bad = Command::new(env!("CARGO_BIN_EXE_pospace"))
        .args(["verify", "--theorem", "counting"])
        .env("POSPACE_MAX_N", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("POSPACE_MAX_N"));
}

#[test]
fn verify_rejects_bad_ids_and_budgets() {
    let out = pospace(&["verify", "--theorem", "fermat"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("effectiveness"), "{}", stderr(&out));

    let out = pospace(&["verify", "--theorem", "effectiveness", "--max-n", "9"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("limit"));

    let out = pospace(&["verify", "--theorem", "effectiveness", "--parallel", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn corelations_on_the_two_chain() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "twochain.json", two_chain());
    let out = pospace(&["corelations", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let listing = stdout_json(&out);
    assert_eq!(listing["count"], 4);
    let phis: Vec<Value> = listing["corelations"].as_array().unwrap().iter().map(|c| c["phi"].clone()).collect();
    assert_eq!(phis, vec![json!([]), json!(["a"]), json!(["b"]), json!(["a", "b"])]);
}

#[test]
fn corelations_rejects_invalid_posets_with_witness() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "cycle.json", json!({"elements": ["a", "b"], "pairs": [["a", "b"], ["b", "a"]]}));
    let out = pospace(&["corelations", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("antisymmetry") && err.contains('a') && err.contains('b'), "{err}");
}

fn map(dom: Value, cod: Value, table: Value) -> Value {
    json!({"dom": dom, "cod": cod, "map": table})
}

#[test]
fn pushout_of_embeddings() {
    let dir = TempDir::new().unwrap();
    let point = json!({"elements": ["x"]});
    let f0 = write(&dir, "f0.json", map(point.clone(), two_chain(), json!({"x": "b"})));
    let f1 = write(&dir, "f1.json", map(point, two_chain(), json!({"x": "a"})));
    let out = pospace(&["pushout", "--f0", f0.to_str().unwrap(), "--f1", f1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let po = stdout_json(&out);
    // gluing the top of one chain to the bottom of the other gives a 3-chain
    assert_eq!(po["apex"]["elements"].as_array().unwrap().len(), 3);
    assert_eq!(po["apex"]["pairs"].as_array().unwrap().len(), 3);
    let classes = po["glue_classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    assert_eq!(classes.iter().filter(|c| c.as_array().unwrap().len() == 2).count(), 1);
}

#[test]
fn pushout_rejects_non_embeddings_with_witness() {
    let dir = TempDir::new().unwrap();
    let anti = json!({"elements": ["a", "b"]});
    let f0 = write(&dir, "f0.json", map(anti.clone(), two_chain(), json!({"a": "a", "b": "b"})));
    let f1 = write(&dir, "f1.json", map(anti.clone(), anti, json!({"a": "a", "b": "b"})));
    let out = pospace(&["pushout", "--f0", f0.to_str().unwrap(), "--f1", f1.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("f0 is not an order-embedding") && err.contains("(a, b)"), "{err}");
}

#[test]
fn dual_goes_both_ways() {
    let dir = TempDir::new().unwrap();
    let vee = json!({"elements": ["a", "b", "c"], "pairs": [["a", "b"], ["a", "c"]]});
    let file = write(&dir, "vee.json", vee);
    let out = pospace(&["dual", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let lattice = stdout_json(&out);
    // up-sets of the V: ∅, {b}, {c}, {b,c}, {a,b,c}
    assert_eq!(lattice["elements"].as_array().unwrap().len(), 5);
    assert!(lattice.get("bot").is_some());

    let lfile = write(&dir, "lattice.json", lattice);
    let out = pospace(&["dual", lfile.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let back = stdout_json(&out);
    assert_eq!(back["elements"].as_array().unwrap().len(), 3);
    assert_eq!(back["pairs"].as_array().unwrap().len(), 2);
}

#[test]
fn dual_rejects_non_distributive_lattices() {
    let dir = TempDir::new().unwrap();
    let m3 = json!({
        "elements": ["0", "x", "y", "z", "1"],
        "pairs": [["0","x"],["0","y"],["0","z"],["0","1"],["x","1"],["y","1"],["z","1"]],
        "bot": "0", "top": "1"
    });
    let file = write(&dir, "m3.json", m3);
    let out = pospace(&["dual", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("distributiv"), "{}", stderr(&out));
}

#[test]
fn export_dot() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "chain.json", json!({"elements": ["a", "b", "c"], "pairs": [["a","b"],["b","c"],["a","c"]]}));
    let out = pospace(&["export", "--dot", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.starts_with("digraph \"chain\""));
    assert!(dot.contains("\"a\" -> \"b\"") && dot.contains("\"b\" -> \"c\""));
    assert!(!dot.contains("\"a\" -> \"c\""));
}

#[test]
fn enumerate_streams_json_lines() {
    let count = |args: &[&str]| {
        let out = pospace(args);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        for line in text.lines() {
            serde_json::from_str::<Value>(line).unwrap();
        }
        text.lines().count()
    };
    assert_eq!(count(&["enumerate", "--posets", "3"]), 19);
    assert_eq!(count(&["enumerate", "--posets", "4", "--unlabeled"]), 16);
    assert_eq!(count(&["enumerate", "--preorders", "3"]), 29);
}

#[test]
fn bad_flags_exit_two() {
    assert_eq!(pospace(&["enumerate"]).status.code(), Some(2));
    assert_eq!(pospace(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pospace(&["export", "missing.json"]).status.code(), Some(2));
    let out = pospace(&["corelations", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cannot read"));
}

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use tempfile::TempDir;

fn locolor(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locolor"))
        .args(args)
        .current_dir(dir)
        .env_remove("LOCOLOR_BUDGET")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("invalid JSON ({e}): {}", stdout(out)))
}

fn without_timestamp(mut manifest: Value) -> Value {
    manifest.as_object_mut().expect("manifest is an object").remove("timestamp");
    manifest
}

#[test]
fn verify_constructed_path() {
    let tmp = TempDir::new().unwrap();
    let out = locolor(&["construct", "--family", "path", "--params", "24", "--out", "p24"], tmp.path());
    assert_eq!(code(&out), 0);
    let out = locolor(&["verify", "--kind", "nl", "--graph", "p24/graph.col", "--coloring", "p24/coloring.txt"], tmp.path());
    assert_eq!(code(&out), 0, "{}", stdout(&out));

    let report = json(&locolor(
        &["--json", "verify", "--kind", "nl", "--graph", "p24/graph.col", "--coloring", "p24/coloring.txt", "--signatures"],
        tmp.path(),
    ));
    assert_eq!(report["status"], "ok");
    assert!(report["witness"].is_null());
    assert_eq!(report["signatures"].as_array().unwrap().len(), 24);
}

#[test]
fn verify_reports_violations() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("c4.edges"), "4 4\n0 1\n1 2\n2 3\n0 3\n").unwrap();
    fs::write(tmp.path().join("f.txt"), "k 2\n0 1\n1 2\n2 1\n3 2\n").unwrap();
    let out = locolor(&["--json", "verify", "--kind", "locating", "--graph", "c4.edges", "--coloring", "f.txt"], tmp.path());
    assert_eq!(code(&out), 1);
    let report = json(&out);
    assert_eq!(report["status"], "violation");
    assert_eq!(report["witness"]["u"], 0);
    assert_eq!(report["witness"]["v"], 2);
    assert!(report.get("signatures").is_none());
}

#[test]
fn solve_cycle_eleven() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&locolor(&["construct", "--family", "cycle", "--params", "11", "--out", "c11"], tmp.path())), 0);
    let report = json(&locolor(&["--json", "solve", "--invariant", "chi-nl", "--graph", "c11/graph.col"], tmp.path()));
    assert_eq!(report["value"], 4);
    assert_eq!(report["invariant"], "chi-nl");
    assert!(report["lower_bound_used"]["source"].is_string());

    let out = locolor(&["--json", "solve", "--invariant", "chi-nl", "--graph", "c11/graph.col", "--k", "3"], tmp.path());
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["outcome"], "infeasible");
}

#[test]
fn budget_exhaustion_exits_three() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&locolor(&["construct", "--family", "path", "--params", "24", "--out", "p"], tmp.path())), 0);
    let out = Command::new(env!("CARGO_BIN_EXE_locolor"))
        .args(["--json", "solve", "--invariant", "chi-nl", "--graph", "p/graph.col"])
        .current_dir(tmp.path())
        .env("LOCOLOR_BUDGET", "5")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    let report = json(&out);
    assert!(report["value"].is_null());
    assert!(report["lower"].as_u64().unwrap() <= 4 && report["upper"].as_u64().unwrap() >= 4);
}

#[test]
fn bounds_path_and_avgdeg() {
    let tmp = TempDir::new().unwrap();
    let out = locolor(&["--json", "bounds", "--formula", "path", "--n", "25"], tmp.path());
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["value"], "5");
    let report = json(&locolor(&["--json", "bounds", "--formula", "avgdeg", "--k", "7", "--avgdeg", "5.99"], tmp.path()));
    assert_eq!(report["value"], "1743");
    let out = locolor(&["bounds", "--formula", "maxdeg", "--k", "4", "--delta", "2", "--n", "25"], tmp.path());
    assert_eq!(code(&out), 1, "25 vertices exceed the bound of 24");
}

#[test]
fn malformed_input_has_line_and_column() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("bad.edges"), "3 2\n0 1\n1 x\n").unwrap();
    let out = locolor(&["solve", "--invariant", "chi", "--graph", "bad.edges"], tmp.path());
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3, column 3"), "{err}");

    fs::write(tmp.path().join("bad.col"), "p edge 2 1\ne 0 1\n").unwrap();
    let err = String::from_utf8(locolor(&["solve", "--invariant", "chi", "--graph", "bad.col"], tmp.path()).stderr).unwrap();
    assert!(err.contains("line 2, column 3"), "{err}");

    assert_eq!(code(&locolor(&["solve", "--invariant", "bogus", "--graph", "bad.col"], tmp.path())), 2);
    assert_eq!(code(&locolor(&["frobnicate"], tmp.path())), 2);
}

#[test]
fn reduce_lift_extract_and_report() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("p3.edges"), "3 2\n0 1\n1 2\n").unwrap();
    fs::write(tmp.path().join("f3.txt"), "k 3\n0 1\n1 2\n2 1\n").unwrap();
    let out = locolor(&["--json", "reduce", "--graph", "p3.edges", "--lift", "f3.txt", "--report", "--out", "r"], tmp.path());
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let manifest = json(&out);
    assert_eq!(manifest["result"]["n_star"], 33);
    assert_eq!(manifest["result"]["m_star"], 68);
    assert!(manifest["assertions"].as_array().unwrap().iter().all(|a| a["passed"] == true));
    let gstar = fs::read_to_string(tmp.path().join("r/gstar.col")).unwrap();
    assert!(gstar.contains("c label 31 y_1"));

    let out = locolor(&["reduce", "--graph", "p3.edges", "--extract", "r/lifted.txt", "--out", "e"], tmp.path());
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(tmp.path().join("e/extracted.txt")).unwrap(), "k 3\n0 1\n1 2\n2 1\n");
}

#[test]
fn reduce_lift_fails_for_two_vertices() {
    let tmp = TempDir::new().unwrap();
    fs::write(tmp.path().join("p2.edges"), "2 1\n0 1\n").unwrap();
    fs::write(tmp.path().join("f.txt"), "k 3\n0 1\n1 2\n").unwrap();
    let out = locolor(&["--json", "reduce", "--graph", "p2.edges", "--lift", "f.txt"], tmp.path());
    assert_eq!(code(&out), 1);
    assert!(json(&out)["result"]["lift_failure"].is_string());
}

#[test]
fn construct_families() {
    let tmp = TempDir::new().unwrap();
    for (family, params, colors) in [("gpqr", "3,4,5", 5), ("gap-pair", "2", 5), ("nl-family", "3,4", 8), ("star", "3", 4), ("complete", "4", 4)] {
        let out = locolor(&["--json", "construct", "--family", family, "--params", params, "--out", family], tmp.path());
        assert_eq!(code(&out), 0, "{family}: {}", String::from_utf8_lossy(&out.stderr));
        let manifest = json(&out);
        assert_eq!(manifest["result"]["colors"], colors, "{family}");
        assert_eq!(manifest["parameters"]["family"], family);
        let ok = locolor(&["verify", "--kind", "nl", "--graph", &format!("{family}/graph.col"), "--coloring", &format!("{family}/coloring.txt")], tmp.path());
        assert_eq!(code(&ok), 0, "{family}");
    }
    let manifest: Value = serde_json::from_str(&fs::read_to_string(tmp.path().join("nl-family/manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["result"]["n"], 144);
    assert_eq!(code(&locolor(&["construct", "--family", "gpqr", "--params", "3,4", "--out", "x"], tmp.path())), 2);
}

#[test]
fn edge_list_output_round_trips() {
    let tmp = TempDir::new().unwrap();
    let out = locolor(&["construct", "--family", "cycle", "--params", "5", "--format", "edges", "--out", "c5"], tmp.path());
    assert_eq!(code(&out), 0);
    assert_eq!(fs::read_to_string(tmp.path().join("c5/graph.edges")).unwrap(), "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n");
}

fn corpus_digest(dir: &Path) -> String {
    let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.join("manifest.json")).unwrap()).unwrap();
    let mut hasher = Sha256::new();
    for entry in manifest["outputs"].as_array().unwrap() {
        let name = entry["path"].as_str().unwrap();
        let bytes = fs::read(dir.join(name)).unwrap();
        assert_eq!(hex::encode(Sha256::digest(&bytes)), entry["sha256"].as_str().unwrap());
        hasher.update(name.as_bytes());
        hasher.update(&bytes);
    }
    hex::encode(hasher.finalize())
}

#[test]
fn corpus_is_deterministic_and_pinned() {
    let tmp = TempDir::new().unwrap();
    assert_eq!(code(&locolor(&["corpus", "--seed", "0", "--out", "a"], tmp.path())), 0);
    assert_eq!(code(&locolor(&["corpus", "--seed", "0", "--out", "b"], tmp.path())), 0);
    let read = |d: &str| without_timestamp(serde_json::from_str(&fs::read_to_string(tmp.path().join(d).join("manifest.json")).unwrap()).unwrap());
    assert_eq!(read("a"), read("b"));
    let digest = corpus_digest(&tmp.path().join("a"));
    assert_eq!(digest, corpus_digest(&tmp.path().join("b")));
    assert_eq!(read("a")["outputs"].as_array().unwrap().len(), 50);
    assert_eq!(digest, PINNED_CORPUS_DIGEST);
    for name in ["gpqr_3_3_4.col", "gap_g_1.col", "gap_h_1.col", "gstar_path_3.col"] {
        assert!(tmp.path().join("a").join(name).exists(), "{name}");
    }
}

const PINNED_CORPUS_DIGEST: &str = "87378c076520ffab0b08c2270f35597156707838f3bbb62e54d23d21dba822c2";

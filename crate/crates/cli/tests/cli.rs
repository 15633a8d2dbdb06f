use std::path::Path;
use std::process::Command;

use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cubac(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cubac")).args(args).current_dir(dir).output().expect("run cubac");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.stdout).expect("JSON output")
}

/// A workspace holding `zero.json`, `yz.json` and a triple file `t.json`.
fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    let reps = json(&cubac(dir.path(), &["cocycles", "Z2", "Z2", "--format", "json"]));
    let reps = reps["representatives"].as_array().unwrap();
    std::fs::write(dir.path().join("zero.json"), reps[0]["cocycle"].to_string()).unwrap();
    std::fs::write(dir.path().join("yz.json"), reps[1]["cocycle"].to_string()).unwrap();
    let triple = serde_json::json!({ "group": "Z2", "coeff": "Z2", "cocycle": reps[1]["cocycle"] });
    std::fs::write(dir.path().join("t.json"), triple.to_string()).unwrap();
    dir
}

#[test]
fn homology_examples() {
    let dir = tempfile::tempdir().unwrap();
    let r = cubac(dir.path(), &["homology", "Z2", "0", "--format", "json"]);
    assert_eq!(r.code, 0);
    assert_eq!(json(&r)["degrees"][0]["homology"], "Z2");
    let r = cubac(dir.path(), &["homology", "Z3", "0", "--format", "json"]);
    assert_eq!(json(&r)["degrees"][0]["homology"], "Z3");
    let r = json(&cubac(dir.path(), &["homology", "1", "2", "--format", "json"]));
    for d in r["degrees"].as_array().unwrap() {
        assert_eq!(d["homology"], "1");
        assert_eq!(d["basis"], 0);
    }
}

#[test]
fn homology_text_is_aligned() {
    let dir = tempfile::tempdir().unwrap();
    let r = cubac(dir.path(), &["homology", "Z3", "1"]);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "Q(Z3)");
    assert_eq!(lines[1], "n  basis  d_n  H_n");
    assert_eq!(lines[2], "0  2      0x2  Z3");
    assert_eq!(lines[3], "1  4      2x4  1");
    assert!(lines[4].ends_with("seed 0: ok"));
}

#[test]
fn cohomology_examples() {
    let dir = tempfile::tempdir().unwrap();
    let r = cubac(dir.path(), &["cohomology", "Z2", "Z2", "1"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("H^1(Z2; Z2) = Z2\n"));
    let r = json(&cubac(dir.path(), &["cohomology", "Z2", "Z2", "3", "--format", "json"]));
    assert_eq!(r["order"], 2);
    assert_eq!(r["representatives"].as_array().unwrap().len(), 2);
}

#[test]
fn check_verdicts() {
    let dir = workspace();
    let r = cubac(dir.path(), &["check", "zero.json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().next(), Some("COCYCLE: yes; COBOUNDARY: yes (witness emitted)"));
    let r = cubac(dir.path(), &["check", "yz.json", "--format", "json"]);
    let v = json(&r);
    assert_eq!((v["cocycle"].clone(), v["coboundary"].clone()), (Value::Bool(true), Value::Bool(false)));
    assert_eq!(v["middle_antisymmetric"], true);

    let bad = serde_json::json!({
        "base": "Z2", "coeff": "Z2", "degree": 3,
        "values": [{ "args": [[0], [0], [1], [1]], "value": [1] }],
    });
    std::fs::write(dir.path().join("bad.json"), bad.to_string()).unwrap();
    let r = cubac(dir.path(), &["check", "bad.json"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.starts_with("COCYCLE: no (normalization at ([0],[0],[1],[1]))"));
}

#[test]
fn build_verify_convert_pipeline() {
    let dir = workspace();
    assert_eq!(cubac(dir.path(), &["build", "Z2", "Z2", "yz.json", "--out", "x.json"]).code, 0);
    let r = cubac(dir.path(), &["verify", "x.json"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.lines().skip(1).filter(|l| !l.starts_with("all")).all(|l| l.contains(" PASS")));
    assert!(r.stdout.ends_with("all checks PASS\n"));
    assert_eq!(cubac(dir.path(), &["convert", "ac-to-sm", "x.json", "--out", "s.json"]).code, 0);
    assert_eq!(cubac(dir.path(), &["verify", "s.json"]).code, 0);
    assert_eq!(cubac(dir.path(), &["convert", "sm-to-ac", "s.json", "--out", "y.json"]).code, 0);
    let x = std::fs::read(dir.path().join("x.json")).unwrap();
    let y = std::fs::read(dir.path().join("y.json")).unwrap();
    assert_eq!(x, y);
}

#[test]
fn verify_reports_a_corrupted_instance() {
    let dir = workspace();
    assert_eq!(cubac(dir.path(), &["build", "Z2", "Z2", "yz.json", "--out", "x.json"]).code, 0);
    let mut x: Value = serde_json::from_slice(&std::fs::read(dir.path().join("x.json")).unwrap()).unwrap();
    // b(0,1,1,0) is the automorphism (1, 0 -> 0), morphism 1; replace it by the identity of 0.
    let idx = 6;
    assert_eq!(x["b_table"][idx], 1);
    x["b_table"][idx] = Value::from(0);
    std::fs::write(dir.path().join("x.json"), x.to_string()).unwrap();
    let r = cubac(dir.path(), &["verify", "x.json", "--format", "json"]);
    assert_eq!(r.code, 1);
    let v = json(&r);
    assert_eq!(v["passed"], false);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(failed.contains(&"acc1"), "{failed:?}");
    assert_eq!(cubac(dir.path(), &["convert", "ac-to-sm", "x.json"]).code, 1);
}

#[test]
fn equiv_verdicts() {
    let dir = workspace();
    let r = cubac(dir.path(), &["equiv", "t.json", "t.json"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("EQUIVALENT (identity isomorphisms)\n"));
    let v = json(&cubac(dir.path(), &["equiv", "t.json", "t.json", "--format", "json"]));
    assert_eq!(v["identity"], true);
    assert_eq!(v["witness"]["values"].as_array().unwrap().len(), 0);
    let r = cubac(dir.path(), &["equiv", "zero.json", "yz.json"]);
    assert_eq!((r.code, r.stdout.as_str()), (1, "INEQUIVALENT\n"));
}

#[test]
fn classify_and_sinh() {
    let dir = workspace();
    let r = cubac(dir.path(), &["classify", "Z2", "Z2"]);
    assert!(r.stdout.starts_with("2 classes for (π0, π1) = (Z2, Z2)\n"));
    let r = cubac(dir.path(), &["classify", "Z3", "Z3"]);
    assert!(r.stdout.starts_with("1 class for"));
    let v = json(&cubac(dir.path(), &["sinh", "t.json"]));
    assert_eq!(v["h"].as_array().unwrap().len(), 0);
    assert_eq!(v["c"], serde_json::json!([{ "args": [[1], [1]], "value": [1] }]));
}

#[test]
fn exit_codes() {
    let dir = workspace();
    let usage = cubac(dir.path(), &["homology"]);
    assert_eq!(usage.code, 2);
    assert_eq!(cubac(dir.path(), &["homology", "Z2x", "1"]).code, 2);
    assert_eq!(cubac(dir.path(), &["check", "missing.json"]).code, 2);
    assert_eq!(cubac(dir.path(), &["build", "Z3", "Z2", "yz.json"]).code, 2);
    assert_eq!(cubac(dir.path(), &["convert", "sm-to-ac", "yz.json"]).code, 2);
    let cap = cubac(dir.path(), &["cohomology", "Z2", "Z2", "4"]);
    assert_eq!(cap.code, 3);
    assert!(cap.stderr.contains("degree cap"));
    assert_eq!(cubac(dir.path(), &["homology", "Z3", "3", "--cap", "1000"]).code, 3);
    assert_eq!(cubac(dir.path(), &["cohomology", "Z2", "Z2", "4", "--degree", "4"]).code, 0);
    assert_eq!(cubac(dir.path(), &["homology", "Z2", "1", "--cap", "0"]).code, 2);
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = workspace();
    let direct = cubac(dir.path(), &["classify", "Z2xZ2", "Z2", "--format", "json"]);
    assert_eq!(cubac(dir.path(), &["classify", "Z2xZ2", "Z2", "--format", "json", "--out", "c.json"]).stdout, "");
    assert_eq!(std::fs::read_to_string(dir.path().join("c.json")).unwrap(), direct.stdout);
}

mod common;

use std::fs;
use std::path::PathBuf;

use cohomlab_cli::ReportDocument;
use common::{cli, golden_dir};

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("cohomlab-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

fn golden(name: &str) -> String {
    golden_dir().join(format!("{name}.json")).display().to_string()
}

#[test]
fn json_output_is_deterministic_and_reparses() {
    let args = ["analyze", "--builtin", "iwasawa-complex", "--spectral", "4", "--format", "json"];
    let a = cli(&args);
    let b = cli(&args);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
    let doc: ReportDocument = serde_json::from_str(&a.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap().trim(), a.stdout.trim());
    assert!(doc.warnings.iter().any(|w| w.contains("invariant")));
}

#[test]
fn hash_covers_input_bytes() {
    let a: ReportDocument = serde_json::from_str(&cli(&["analyze", &golden("dot"), "--format", "json"]).stdout).unwrap();
    let b: ReportDocument = serde_json::from_str(&cli(&["analyze", &golden("hseg"), "--format", "json"]).stdout).unwrap();
    assert_eq!(a.input_sha256.len(), 64);
    assert_ne!(a.input_sha256, b.input_sha256);
}

#[test]
fn every_view_and_format_renders() {
    for view in ["bigraded", "total", "type-n"] {
        for format in ["json", "md", "csv"] {
            let r = cli(&["analyze", &golden("zigzag3"), "--view", view, "--format", format]);
            assert_eq!(r.code, 0, "{view}/{format}: {}", r.stderr);
            assert!(!r.stdout.is_empty());
        }
    }
    let md = cli(&["analyze", "--builtin", "iwasawa-symplectic"]);
    assert!(md.stdout.contains("slack"), "{}", md.stdout);
}

#[test]
fn out_writes_file() {
    let d = scratch("out");
    let p = d.join("r.csv");
    let r = cli(&["analyze", &golden("square"), "--format", "csv", "--out", p.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    assert!(fs::read_to_string(&p).unwrap().starts_with("section,flavor,degree,dim"));
}

#[test]
fn exit_codes() {
    let d = scratch("codes");
    let bad_json = d.join("bad.json");
    fs::write(&bad_json, "{ not json").unwrap();
    assert_eq!(cli(&["analyze", bad_json.to_str().unwrap()]).code, 1);

    let unknown_field = d.join("unknown.json");
    fs::write(&unknown_field, r#"{"double_complex": {"entries": [], "d1": [], "d2": []}, "extra": 1}"#).unwrap();
    assert_eq!(cli(&["analyze", unknown_field.to_str().unwrap()]).code, 1);

    // δ₁ leaving an undeclared bidegree
    let undeclared = d.join("undeclared.json");
    fs::write(
        &undeclared,
        r#"{"double_complex": {"entries": [{"p":0,"q":0,"dim":1}], "d1": [{"from":[0,0],"matrix":[["1"]]}], "d2": []}}"#,
    )
    .unwrap();
    let r = cli(&["analyze", undeclared.to_str().unwrap()]);
    assert_eq!(r.code, 2, "{}", r.stderr);

    // δ₁δ₂ + δ₂δ₁ ≠ 0: the square with both signs positive
    let anti = d.join("anti.json");
    let sq = fs::read_to_string(golden("square")).unwrap().replace("\"-1\"", "\"1\"");
    fs::write(&anti, sq).unwrap();
    let r = cli(&["analyze", anti.to_str().unwrap()]);
    assert_eq!(r.code, 2, "{}", r.stderr);

    assert_eq!(cli(&["analyze", "/nonexistent/input.json"]).code, 1);
    assert_eq!(cli(&["analyze", "--builtin", "nope"]).code, 1);
    assert_eq!(cli(&["analyze"]).code, 1);
    assert_eq!(cli(&["fuzz", "--shapes", "pentagon:1"]).code, 1);
    assert_eq!(cli(&["--version"]).code, 0);
}

#[test]
fn fuzz_runs_and_reports() {
    let d = scratch("fuzz");
    let out = d.join("fail");
    let r = cli(&["fuzz", "--seed", "7", "--iters", "60", "--out", out.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!(r.stdout.contains("60 cases"));
    assert!(r.stdout.contains("all properties hold"));
    assert!(!out.exists(), "no reproducers for a passing run");

    let lemma = cli(&["fuzz", "--iters", "30", "--shapes", "dot:0-3,square:1-2", "--out", out.to_str().unwrap()]);
    assert!(lemma.stdout.contains("30 with the lemma, 0 without"), "{}", lemma.stdout);
    let seg = cli(&["fuzz", "--iters", "30", "--shapes", "dot:0-2,hseg:1-2", "--out", out.to_str().unwrap()]);
    assert!(seg.stdout.contains("0 with the lemma, 30 without"), "{}", seg.stdout);

    let empty = cli(&["fuzz", "--iters", "0", "--out", out.to_str().unwrap()]);
    assert_eq!(empty.code, 0);
    assert!(empty.stdout.contains("0 cases"));
}

#[test]
fn fuzz_is_seed_deterministic() {
    let d = scratch("det");
    let out = d.join("fail");
    let a = cli(&["fuzz", "--seed", "3", "--iters", "40", "--out", out.to_str().unwrap()]);
    let b = cli(&["fuzz", "--seed", "3", "--iters", "40", "--out", out.to_str().unwrap()]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bidiff_pair_input() {
    let d = scratch("pair");
    let p = d.join("pair.json");
    // a single nonzero δ₁: 𝕂 → 𝕂 in degrees 0 → 1, δ₂ = 0
    fs::write(
        &p,
        r#"{"bidiff_pair": {"degrees": [{"k":0,"dim":1},{"k":1,"dim":1}], "deg1": 1, "deg2": 1,
            "d1": [{"from":0,"matrix":[["1"]]}], "d2": []}}"#,
    )
    .unwrap();
    let r = cli(&["analyze", p.to_str().unwrap(), "--format", "json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc: ReportDocument = serde_json::from_str(&r.stdout).unwrap();
    assert!(doc.pair.is_some());
}

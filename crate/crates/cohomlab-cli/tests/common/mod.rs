#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use cohomlab::cohomology::Table;
use cohomlab::spectral::SpectralPage;
use cohomlab_cli::ReportDocument;
use serde::Deserialize;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub elapsed: Duration,
}

pub fn cli(args: &[&str]) -> Run {
    let t = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_cohomlab")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        elapsed: t.elapsed(),
    }
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub const GOLDEN: [&str; 5] = ["dot", "square", "hseg", "vseg", "zigzag3"];

#[derive(Deserialize)]
struct ExpectedPage {
    r: usize,
    dims: Vec<[i64; 3]>,
    dr_ranks: Vec<[i64; 3]>,
}

#[derive(Deserialize)]
struct Expected {
    #[allow(dead_code)]
    derivation: Vec<String>,
    d1: Vec<[i64; 3]>,
    d2: Vec<[i64; 3]>,
    bc: Vec<[i64; 3]>,
    a: Vec<[i64; 3]>,
    v: [Vec<[i64; 3]>; 6],
    tot_plus: Vec<[i64; 2]>,
    tot_minus: Vec<[i64; 2]>,
    lemma_holds: bool,
    r_stab: usize,
    first: Vec<ExpectedPage>,
    second: Vec<ExpectedPage>,
}

fn bi(t: &Table<(i32, i32)>) -> Vec<[i64; 3]> {
    t.iter().filter(|(_, &d)| d > 0).map(|(&(p, q), &d)| [p as i64, q as i64, d as i64]).collect()
}

fn single(t: &Table<i32>) -> Vec<[i64; 2]> {
    t.iter().filter(|(_, &d)| d > 0).map(|(&n, &d)| [n as i64, d as i64]).collect()
}

fn pages_match(name: &str, have: &[SpectralPage], want: &[ExpectedPage], errs: &mut Vec<String>) {
    if have.len() != want.len() {
        errs.push(format!("{name}: {} pages, expected {}", have.len(), want.len()));
        return;
    }
    for (h, w) in have.iter().zip(want) {
        if h.r != w.r || bi(&h.dims) != w.dims || bi(&h.dr_ranks) != w.dr_ranks {
            errs.push(format!("{name} E_{}: dims {:?} ranks {:?}", h.r, bi(&h.dims), bi(&h.dr_ranks)));
        }
    }
}

/// Runs `analyze --format json --spectral 9` on a golden input and lists
/// every mismatch with the hand-derived expectation.
pub fn golden_mismatches(name: &str) -> Vec<String> {
    let dir = golden_dir();
    let input = dir.join(format!("{name}.json"));
    let run = cli(&["analyze", input.to_str().unwrap(), "--format", "json", "--spectral", "9"]);
    if run.code != 0 {
        return vec![format!("exit {}: {}", run.code, run.stderr)];
    }
    let doc: ReportDocument = serde_json::from_str(&run.stdout).expect("report parses");
    let want: Expected =
        serde_json::from_str(&std::fs::read_to_string(dir.join(format!("{name}.expected.json"))).unwrap()).unwrap();
    let r = doc.cohomology.expect("double complex report");
    let t = &r.bigraded;
    let mut errs = Vec::new();
    for (flavor, have, want) in [("D1", &t.d1, &want.d1), ("D2", &t.d2, &want.d2), ("BC", &t.bc, &want.bc), ("A", &t.a, &want.a)] {
        if &bi(have) != want {
            errs.push(format!("{flavor}: {:?}", bi(have)));
        }
    }
    for (i, (have, want)) in t.v.iter().zip(&want.v).enumerate() {
        if &bi(have) != want {
            errs.push(format!("V{}: {:?}", i + 1, bi(have)));
        }
    }
    if single(&r.tot_plus) != want.tot_plus || single(&r.tot_minus) != want.tot_minus {
        errs.push(format!("TOT: {:?} {:?}", single(&r.tot_plus), single(&r.tot_minus)));
    }
    if r.lemma.holds != want.lemma_holds {
        errs.push(format!("lemma: {}", r.lemma.holds));
    }
    let s = doc.spectral.expect("spectral section");
    if s.r_stab != want.r_stab {
        errs.push(format!("r_stab: {}", s.r_stab));
    }
    pages_match("first", &s.first, &want.first, &mut errs);
    pages_match("second", &s.second, &want.second, &mut errs);
    errs
}

//! `fuzz`: the property suite over generated bicomplexes, with shrunk JSON
//! reproducers for failures.

use std::fs;
use std::path::{Path, PathBuf};

use cohomlab::complexes::{Placed, ShapeParams};
use cohomlab::properties::{fuzz, Failure, FuzzSummary};
use serde::Serialize;

use crate::input::InputDocument;
use crate::CliError;

/// Default span of origins for `--shapes` lists.
pub const SHAPE_SPAN: i32 = 4;

pub fn parse_shapes(spec: Option<&str>) -> Result<ShapeParams, CliError> {
    match spec {
        None | Some("mixed") => Ok(ShapeParams::mixed()),
        Some(s) => ShapeParams::parse_counts(s, SHAPE_SPAN).map_err(CliError::Parse),
    }
}

#[derive(Serialize)]
struct Reproducer<'a> {
    #[serde(flatten)]
    input: InputDocument,
    fuzz: ReproInfo<'a>,
}

#[derive(Serialize)]
struct ReproInfo<'a> {
    seed: u64,
    index: u64,
    case_seed: u64,
    shapes: &'a [Placed],
    failures: &'a [Failure],
}

/// Runs the suite and writes one reproducer per failing case into `dir`.
pub fn run(seed: u64, iters: u64, params: &ShapeParams, threads: usize, dir: &Path) -> Result<(FuzzSummary, Vec<PathBuf>), CliError> {
    let summary = fuzz(seed, iters, params, threads);
    let mut written = Vec::new();
    if !summary.failures.is_empty() {
        fs::create_dir_all(dir).map_err(|e| CliError::Io { path: dir.display().to_string(), source: e })?;
    }
    for f in &summary.failures {
        let doc = Reproducer {
            input: InputDocument::double(&f.complex),
            fuzz: ReproInfo { seed, index: f.index, case_seed: f.case_seed, shapes: &f.shapes, failures: &f.failures },
        };
        let path = dir.join(format!("repro-{seed}-{}.json", f.index));
        let text = serde_json::to_string_pretty(&doc).expect("reproducer serializes");
        fs::write(&path, text).map_err(|e| CliError::Io { path: path.display().to_string(), source: e })?;
        written.push(path);
    }
    Ok((summary, written))
}

pub fn summary_text(s: &FuzzSummary, files: &[PathBuf]) -> String {
    let mut out = format!(
        "{} cases, {} with the lemma, {} without, largest total dimension {}\n",
        s.cases, s.lemma_true, s.lemma_false, s.max_total_dim
    );
    if s.passed() {
        out.push_str("all properties hold\n");
    } else {
        for (p, n) in s.by_property() {
            out.push_str(&format!("FAILED {p}: {n} case(s)\n"));
        }
        for f in files {
            out.push_str(&format!("reproducer: {}\n", f.display()));
        }
    }
    out
}

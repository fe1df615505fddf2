//! Markdown and CSV renderings of a report. Tables put degrees in rows and
//! flavors in columns, except the type-n table which runs along k.

use std::fmt::Write;

use clap::ValueEnum;
use cohomlab::cohomology::{CohomReport, PairReport, Table};
use cohomlab::geometry::{SymplecticReport, TypeNView};
use cohomlab::spectral::SpectralPage;

use crate::report::{GeometrySection, ReportDocument, SpectralSection};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum View {
    Bigraded,
    Total,
    TypeN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

pub fn render(doc: &ReportDocument, view: View, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("report serializes") + "\n",
        Format::Md => markdown(doc, view),
        Format::Csv => csv(doc, view),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn row(out: &mut String, cells: &[String]) {
    let _ = writeln!(out, "| {} |", cells.join(" | "));
}

fn header(out: &mut String, cells: &[&str]) {
    row(out, &cells.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    row(out, &cells.iter().map(|_| "---".to_string()).collect::<Vec<_>>());
}

fn bigraded_md(out: &mut String, r: &CohomReport) {
    let t = &r.bigraded;
    header(out, &["(p,q)", "D1", "D2", "BC", "A", "V1", "V2", "V3", "V4", "V5", "V6"]);
    for k in t.keys() {
        let mut cells = vec![format!("({},{})", k.0, k.1)];
        cells.extend([&t.d1, &t.d2, &t.bc, &t.a].iter().map(|x| x.at(k).to_string()));
        cells.extend(t.v.iter().map(|x| x.at(k).to_string()));
        row(out, &cells);
    }
}

fn total_md(out: &mut String, r: &CohomReport) {
    header(out, &["n", "ΣD1", "ΣD2", "ΣBC", "ΣA", "TOT+", "TOT-", "BC+A-D1-D2", "BC+A-2·TOT+", "BC+A-2·TOT-"]);
    for s in &r.slack {
        let cells: Vec<String> = [s.n as i64, s.d1 as i64, s.d2 as i64, s.bc as i64, s.a as i64]
            .into_iter()
            .chain([s.tot_plus as i64, s.tot_minus as i64, s.thm1, s.cor_plus, s.cor_minus])
            .map(|x| x.to_string())
            .collect();
        row(out, &cells);
    }
}

fn verdicts_md(out: &mut String, r: &CohomReport) {
    let v = &r.verdicts;
    let _ = writeln!(out);
    let _ = writeln!(out, "- δ₁δ₂-lemma: {}", if v.lemma_holds { "holds" } else { "fails" });
    let conds: Vec<String> =
        r.lemma.conditions.iter().map(|c| c.map_or("n/a".to_string(), |b| yes(b).to_string())).collect();
    let _ = writeln!(out, "- lemma conditions (1)–(8): {}", conds.join(", "));
    let _ = writeln!(out, "- inequalities hold: {}", yes(v.inequalities_hold));
    let _ = writeln!(out, "- equality BC+A = D1+D2: {}", yes(v.thm1_equality));
    let _ = writeln!(out, "- equality BC+A = 2·TOT: {}", yes(v.cor_equality_plus));
    let _ = writeln!(out, "- all checks consistent: {}", yes(v.consistent()));
}

fn type_n_md(out: &mut String, t: &TypeNView, betti: Option<&Table<i32>>) {
    let Some((lo, hi)) = t.range() else {
        return;
    };
    let ks: Vec<i32> = (lo..=hi).collect();
    let mut head = vec!["".to_string()];
    head.extend(ks.iter().map(|k| format!("k={k}")));
    row(out, &head);
    row(out, &head.iter().map(|_| "---".to_string()).collect::<Vec<_>>());
    for (name, tab) in [("∂̄ (D2)", &t.d2), ("∂ (D1)", &t.d1), ("BC", &t.bc), ("A", &t.a)] {
        let mut cells = vec![name.to_string()];
        cells.extend(ks.iter().map(|&k| tab.at(k).to_string()));
        row(out, &cells);
    }
    if let Some(b) = betti {
        // b_j sits under k = j − n
        let mut cells = vec!["Betti".to_string()];
        cells.extend(ks.iter().map(|&k| format!("b{}={}", k - lo, b.at(k - lo))));
        row(out, &cells);
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "- BC + A ≥ ∂ + ∂̄ for every k: {}", yes(t.inequality_holds));
    let _ = writeln!(out, "- equality for every k: {}", yes(t.equality));
}

fn symplectic_md(out: &mut String, s: &SymplecticReport) {
    header(out, &["k", "(d;d)", "(dᴧ;dᴧ)", "(d,dᴧ;ddᴧ)", "(ddᴧ;d,dᴧ)", "BC+A-2·dR"]);
    for (&k, &slack) in &s.slack {
        let t = &s.tables;
        row(out, &[k, t.d1.at(k) as i32, t.d2.at(k) as i32, t.bc.at(k) as i32, t.a.at(k) as i32].map(|x| x.to_string()).into_iter().chain([slack.to_string()]).collect::<Vec<_>>());
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "- Hard Lefschetz: {}", yes(s.hard_lefschetz.holds));
    let _ = writeln!(out, "- Lefschetz decomposition: {}", yes(s.decomposition.decomposition_holds));
    let prim: Vec<String> = s.decomposition.primitive.values().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "- primitive cohomology by degree: {}", prim.join(", "));
    let _ = writeln!(
        out,
        "- canonical double complex degenerates at E₁: first {}, second {}",
        yes(s.doub.degenerate_first),
        yes(s.doub.degenerate_second)
    );
    let _ = writeln!(out, "- operator identities: {}", yes(s.operators.all()));
    let _ = writeln!(out, "- ⋆-duality of dimensions: {}", yes(s.star_duality));
    let _ = writeln!(out, "- slack consistent with Hard Lefschetz: {}", yes(s.slack_consistent_with_hlc));
}

fn pair_md(out: &mut String, p: &PairReport) {
    let _ = writeln!(out, "Graded pair with deg δ₁ = {}, deg δ₂ = {}", p.deg1, p.deg2);
    let _ = writeln!(out);
    header(out, &["k", "D1", "D2", "BC", "A", "BC+A-D1-D2"]);
    for (&k, &s) in &p.thm1_slack {
        let t = &p.tables;
        let mut cells: Vec<String> = [t.d1.at(k), t.d2.at(k), t.bc.at(k), t.a.at(k)].iter().map(|x| x.to_string()).collect();
        cells.insert(0, k.to_string());
        cells.push(s.to_string());
        row(out, &cells);
    }
    if let (Some(m), Some(tp)) = (p.folded_modulus, &p.folded_tot_plus) {
        let _ = writeln!(out);
        let _ = writeln!(out, "Total cohomology of the canonical double complex (classes mod {m}):");
        let _ = writeln!(out);
        header(out, &["class", "TOT+"]);
        for (k, d) in tp.iter() {
            row(out, &[k.to_string(), d.to_string()]);
        }
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "- δ₁δ₂-lemma: {}", if p.lemma.holds { "holds" } else { "fails" });
}

fn page_md(out: &mut String, p: &SpectralPage) {
    let _ = writeln!(out, "{:?} spectral sequence, E_{}:", p.which, p.r);
    let _ = writeln!(out);
    header(out, &["(p,q)", "dim", "rank d_r"]);
    for (k, d) in p.dims.iter().filter(|(_, &d)| d > 0) {
        let rank = p.dr_ranks.at(*k);
        row(out, &[format!("({},{})", k.0, k.1), d.to_string(), rank.to_string()]);
    }
    let _ = writeln!(out);
}

fn spectral_md(out: &mut String, s: &SpectralSection) {
    let _ = writeln!(out, "## Spectral sequences (r_stab = {})", s.r_stab);
    let _ = writeln!(out);
    for p in s.first.iter().chain(&s.second) {
        page_md(out, p);
    }
    let _ = writeln!(out, "- first degenerates at E₁: {}", yes(s.first_degenerates_at_1));
    let _ = writeln!(out, "- second degenerates at E₁: {}", yes(s.second_degenerates_at_1));
}

fn geometry_md(out: &mut String, g: &GeometrySection, view: View) {
    let betti: Vec<String> = g.de_rham.values().map(|v| v.to_string()).collect();
    let _ = writeln!(out, "Lie algebra of dimension {}, nilpotent: {}", g.dim, yes(g.nilpotent));
    let _ = writeln!(out, "Betti numbers: {}", betti.join(", "));
    if let Some(s) = &g.symplectic {
        let _ = writeln!(out);
        let _ = writeln!(out, "## Symplectic cohomologies");
        let _ = writeln!(out);
        symplectic_md(out, s);
    }
    if let Some(c) = &g.complex {
        let _ = writeln!(out);
        let _ = writeln!(out, "## Complex structure (n = {})", c.n);
        let _ = writeln!(out);
        match view {
            View::Bigraded => {
                bigraded_md(out, &c.cohomology);
                verdicts_md(out, &c.cohomology);
            }
            View::Total => {
                total_md(out, &c.cohomology);
                verdicts_md(out, &c.cohomology);
            }
            View::TypeN => type_n_md(out, &c.type_n, Some(&g.de_rham)),
        }
        let _ = writeln!(out, "- Frölicher spectral sequence degenerates at E₁: {}", yes(c.e1_degenerate));
        if let Some(s) = &c.spectral {
            let _ = writeln!(out);
            spectral_md(out, s);
        }
    }
}

fn markdown(doc: &ReportDocument, view: View) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# cohomlab report");
    let _ = writeln!(out);
    let _ = writeln!(out, "source: `{}`  ", doc.source);
    let _ = writeln!(out, "sha256: `{}`", doc.input_sha256);
    let _ = writeln!(out);
    for w in &doc.warnings {
        let _ = writeln!(out, "> warning: {w}");
    }
    if !doc.warnings.is_empty() {
        let _ = writeln!(out);
    }
    if let Some(r) = &doc.cohomology {
        match view {
            View::Bigraded => bigraded_md(&mut out, r),
            View::Total => total_md(&mut out, r),
            View::TypeN => {
                if let Some(t) = &doc.type_n {
                    type_n_md(&mut out, t, None);
                }
            }
        }
        if view != View::TypeN {
            verdicts_md(&mut out, r);
        }
    }
    if let Some(p) = &doc.pair {
        pair_md(&mut out, p);
    }
    if let Some(d) = &doc.doub {
        let _ = writeln!(
            out,
            "- canonical double complex degenerates at E₁: first {}, second {}",
            yes(d.degenerate_first),
            yes(d.degenerate_second)
        );
    }
    if let Some(s) = &doc.spectral {
        let _ = writeln!(out);
        spectral_md(&mut out, s);
    }
    if let Some(g) = &doc.geometry {
        geometry_md(&mut out, g, view);
    }
    out
}

fn csv_table<K: Ord + Copy>(out: &mut String, section: &str, flavor: &str, t: &Table<K>, key: impl Fn(K) -> String) {
    for (&k, &d) in t.iter() {
        let _ = writeln!(out, "{section},{flavor},{},{d}", key(k));
    }
}

fn bi(k: (i32, i32)) -> String {
    format!("{};{}", k.0, k.1)
}

fn csv(doc: &ReportDocument, view: View) -> String {
    let mut out = String::from("section,flavor,degree,dim\n");
    let cohom = |out: &mut String, section: &str, r: &CohomReport| {
        let t = &r.bigraded;
        let named = [("D1", &t.d1), ("D2", &t.d2), ("BC", &t.bc), ("A", &t.a)];
        match view {
            View::Bigraded => {
                for (n, tab) in named {
                    csv_table(out, section, n, tab, bi);
                }
                for (i, tab) in t.v.iter().enumerate() {
                    csv_table(out, section, &format!("V{}", i + 1), tab, bi);
                }
            }
            _ => {
                for (n, tab) in named {
                    csv_table(out, section, n, &tab.collapse(|(p, q)| p + q), |k| k.to_string());
                }
                csv_table(out, section, "TOT+", &r.tot_plus, |k| k.to_string());
                csv_table(out, section, "TOT-", &r.tot_minus, |k| k.to_string());
            }
        }
    };
    let type_n = |out: &mut String, section: &str, t: &TypeNView| {
        for (n, tab) in [("D2", &t.d2), ("D1", &t.d1), ("BC", &t.bc), ("A", &t.a)] {
            csv_table(out, section, n, tab, |k| k.to_string());
        }
    };
    if let Some(r) = &doc.cohomology {
        match (view, &doc.type_n) {
            (View::TypeN, Some(t)) => type_n(&mut out, "type_n", t),
            _ => cohom(&mut out, "double_complex", r),
        }
    }
    if let Some(p) = &doc.pair {
        let t = &p.tables;
        for (n, tab) in [("D1", &t.d1), ("D2", &t.d2), ("BC", &t.bc), ("A", &t.a)] {
            csv_table(&mut out, "pair", n, tab, |k| k.to_string());
        }
    }
    if let Some(s) = &doc.spectral {
        for p in s.first.iter().chain(&s.second) {
            let name = format!("{:?}E{}", p.which, p.r).to_lowercase();
            csv_table(&mut out, "spectral", &name, &p.dims, bi);
        }
    }
    if let Some(g) = &doc.geometry {
        csv_table(&mut out, "lie", "dR", &g.de_rham, |k| k.to_string());
        if let Some(s) = &g.symplectic {
            let t = &s.tables;
            for (n, tab) in [("d", &t.d1), ("dL", &t.d2), ("BC", &t.bc), ("A", &t.a)] {
                csv_table(&mut out, "symplectic", n, tab, |k| k.to_string());
            }
        }
        if let Some(c) = &g.complex {
            match view {
                View::TypeN => type_n(&mut out, "type_n", &c.type_n),
                _ => cohom(&mut out, "complex", &c.cohomology),
            }
        }
    }
    out
}

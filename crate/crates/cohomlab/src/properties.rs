//! The randomized property suite: every invariant the library promises,
//! checked on generated bicomplexes and generated symplectic algebras.

use std::collections::BTreeMap;
use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};

use crate::cohomology::{frolicher_report, CohomError, CohomReport, Table};
use crate::complexes::{from_shapes, predict, random_bicomplex, DoubleComplex, Generated, Placed, ShapeParams};
use crate::geometry::{random_nilpotent_symplectic, symplectic_pair, symplectic_report, GeometryError};
use crate::spectral::{page_at, r_stab, Which};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// BC + A = D1 + D2 + V1 + V6 in every bidegree.
    BcAIdentity,
    /// ΣBC + ΣA ≥ ΣD1 + ΣD2.
    SumInequality,
    /// ΣBC + ΣA ≥ 2·TOT for both signs.
    TotInequality,
    /// min(ΣD1, ΣD2) ≥ TOT.
    Frolicher,
    LemmaConditionsAgree,
    EqualityIffLemma,
    /// E₁ pages are the one-sided cohomologies and E_∞ abuts to TOT.
    SpectralPages,
    ShapePrediction,
    VarouchasExact,
    /// V1/V6 vanishing forces surjectivity/injectivity of the maps to and from TOT.
    TotMaps,
    TotSignsAgree,
    /// Symplectic suite: operator identities.
    SymplecticOperators,
    /// Symplectic suite: D1(k) = D2(2n−k), BC(k) = A(2n−k).
    SymplecticDuality,
    /// Symplectic suite: both spectral sequences of the canonical double complex degenerate.
    SymplecticDegeneration,
    /// Symplectic suite: slack ≥ 0, and zero total slack iff Hard Lefschetz.
    SymplecticSlack,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Property {
    pub fn name(self) -> &'static str {
        use Property::*;
        match self {
            BcAIdentity => "bc-a-identity",
            SumInequality => "sum-inequality",
            TotInequality => "tot-inequality",
            Frolicher => "frolicher",
            LemmaConditionsAgree => "lemma-conditions-agree",
            EqualityIffLemma => "equality-iff-lemma",
            SpectralPages => "spectral-pages",
            ShapePrediction => "shape-prediction",
            VarouchasExact => "varouchas-exact",
            TotMaps => "tot-maps",
            TotSignsAgree => "tot-signs-agree",
            SymplecticOperators => "symplectic-operators",
            SymplecticDuality => "symplectic-duality",
            SymplecticDegeneration => "symplectic-degeneration",
            SymplecticSlack => "symplectic-slack",
        }
    }

    pub const BICOMPLEX: [Property; 11] = [
        Property::BcAIdentity,
        Property::SumInequality,
        Property::TotInequality,
        Property::Frolicher,
        Property::LemmaConditionsAgree,
        Property::EqualityIffLemma,
        Property::SpectralPages,
        Property::ShapePrediction,
        Property::VarouchasExact,
        Property::TotMaps,
        Property::TotSignsAgree,
    ];
    pub const SYMPLECTIC: [Property; 4] = [
        Property::SymplecticOperators,
        Property::SymplecticDuality,
        Property::SymplecticDegeneration,
        Property::SymplecticSlack,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub property: Property,
    pub detail: String,
}

fn table_eq<K: Ord + Copy + fmt::Debug>(a: &Table<K>, b: &BTreeMap<K, usize>) -> bool {
    a.iter().filter(|(_, &v)| v != 0).map(|(&k, &v)| (k, v)).eq(b.iter().filter(|(_, &v)| v != 0).map(|(&k, &v)| (k, v)))
}

fn spectral_failures(dc: &DoubleComplex, r: &CohomReport) -> Result<Option<String>, CohomError> {
    let rs = r_stab(dc);
    for (which, e1_expected) in [(Which::First, &r.bigraded.d2), (Which::Second, &r.bigraded.d1)] {
        let e1 = page_at(dc, which, 1)?;
        if e1.dims.iter().any(|(&k, &v)| e1_expected.at(k) != v) || e1_expected.iter().any(|(&k, &v)| e1.dims.at(k) != v) {
            return Ok(Some(format!("{which:?} E₁ differs from the one-sided cohomology")));
        }
        let einf = page_at(dc, which, rs)?;
        if einf.dims.iter().any(|(k, &v)| v > e1.dims.at(*k)) {
            return Ok(Some(format!("{which:?} page dims increase")));
        }
        let sums = einf.dims.collapse(|(p, q)| p + q);
        if let Some((lo, hi)) = dc.total_range() {
            if let Some(n) = (lo..=hi).find(|&n| sums.at(n) != r.tot_plus.at(n)) {
                return Ok(Some(format!("{which:?} ΣE_∞ = {} ≠ TOT = {} in degree {n}", sums.at(n), r.tot_plus.at(n))));
            }
        }
    }
    Ok(None)
}

/// Runs every bicomplex property on one generated case.
pub fn check_generated(g: &Generated) -> Result<Vec<Failure>, CohomError> {
    let r = frolicher_report(&g.complex)?;
    let v = &r.verdicts;
    let mut out = Vec::new();
    let mut fail = |property, ok: bool, detail: String| {
        if !ok {
            out.push(Failure { property, detail });
        }
    };
    let bad_degrees = |f: fn(&crate::cohomology::DegreeSlack) -> bool| {
        r.slack.iter().filter(|s| !f(s)).map(|s| s.n).collect::<Vec<_>>()
    };
    fail(Property::BcAIdentity, v.varouchas_identity, "BC/A identity fails".into());
    let b = bad_degrees(|s| s.thm1 >= 0);
    fail(Property::SumInequality, b.is_empty(), format!("degrees {b:?}"));
    let b = bad_degrees(|s| s.cor_plus >= 0 && s.cor_minus >= 0);
    fail(Property::TotInequality, b.is_empty(), format!("degrees {b:?}"));
    let b = bad_degrees(|s| s.frolicher >= 0);
    fail(Property::Frolicher, b.is_empty(), format!("degrees {b:?}"));
    fail(
        Property::LemmaConditionsAgree,
        v.lemma_conditions_agree,
        format!("conditions {:?}", r.lemma.conditions),
    );
    fail(
        Property::EqualityIffLemma,
        v.equality_iff_lemma,
        format!("lemma {} but equality {}", v.lemma_holds, v.cor_equality_plus),
    );
    fail(Property::VarouchasExact, v.varouchas_exact, "exact sequences fail".into());
    fail(
        Property::TotMaps,
        v.v1_zero_implies_bc_tot_surjective && v.v6_zero_implies_tot_a_injective,
        format!(
            "V1 ⇒ onto: {}, V6 ⇒ into: {}",
            v.v1_zero_implies_bc_tot_surjective, v.v6_zero_implies_tot_a_injective
        ),
    );
    fail(Property::TotSignsAgree, r.tot_plus.iter().all(|(k, &d)| r.tot_minus.at(*k) == d), "TOT₊ ≠ TOT₋".into());
    if let Some(d) = spectral_failures(&g.complex, &r)? {
        fail(Property::SpectralPages, false, d);
    }

    let pr = predict(&g.shapes);
    let t = &r.bigraded;
    let mut wrong = Vec::new();
    for (name, have, want) in [("D1", &t.d1, &pr.d1), ("D2", &t.d2, &pr.d2), ("BC", &t.bc, &pr.bc), ("A", &t.a, &pr.a)] {
        if !table_eq(have, want) {
            wrong.push(name.to_string());
        }
    }
    for (i, (have, want)) in t.v.iter().zip(&pr.v).enumerate() {
        if !table_eq(have, want) {
            wrong.push(format!("V{}", i + 1));
        }
    }
    if !table_eq(&r.tot_plus, &pr.tot) {
        wrong.push("TOT".into());
    }
    if r.lemma.holds != pr.lemma_holds {
        wrong.push("lemma".into());
    }
    fail(Property::ShapePrediction, wrong.is_empty(), format!("mismatched: {}", wrong.join(", ")));
    Ok(out)
}

/// One failing fuzz case, shrunk to a minimal list of summands.
#[derive(Debug, Clone)]
pub struct CaseFailure {
    pub index: u64,
    pub case_seed: u64,
    pub failures: Vec<Failure>,
    pub shapes: Vec<Placed>,
    pub complex: DoubleComplex,
}

#[derive(Debug, Clone, Default)]
pub struct FuzzSummary {
    pub cases: u64,
    pub lemma_true: u64,
    pub lemma_false: u64,
    pub max_total_dim: usize,
    pub failures: Vec<CaseFailure>,
}

impl FuzzSummary {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Failure counts per property.
    pub fn by_property(&self) -> BTreeMap<Property, usize> {
        let mut m = BTreeMap::new();
        for c in &self.failures {
            for f in &c.failures {
                *m.entry(f.property).or_insert(0) += 1;
            }
        }
        m
    }
}

/// Seed of the i-th case (splitmix64 of seed + i).
pub fn case_seed(seed: u64, i: u64) -> u64 {
    let mut z = seed.wrapping_add(i.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn still_fails(seed: u64, shapes: &[Placed], props: &[Property]) -> Option<Generated> {
    let g = from_shapes(seed, shapes.to_vec());
    let fails = match check_generated(&g) {
        Ok(f) => f.iter().any(|f| props.contains(&f.property)),
        Err(_) => true,
    };
    fails.then_some(g)
}

/// Greedily drops summands while some of the original properties still fail.
fn shrink(seed: u64, g: Generated, failures: &[Failure]) -> Generated {
    let props: Vec<Property> = failures.iter().map(|f| f.property).collect();
    let mut best = g;
    let mut i = 0;
    while i < best.shapes.len() {
        let mut fewer = best.shapes.clone();
        fewer.remove(i);
        match still_fails(seed, &fewer, &props) {
            Some(g) => best = g,
            None => i += 1,
        }
    }
    best
}

fn run_case(seed: u64, i: u64, params: &ShapeParams) -> (bool, usize, Option<CaseFailure>) {
    let cs = case_seed(seed, i);
    let g = random_bicomplex(cs, params);
    let dim = g.complex.dims().values().sum();
    let expected = g.lemma_expected();
    let failures = match check_generated(&g) {
        Ok(f) => f,
        Err(e) => vec![Failure { property: Property::ShapePrediction, detail: format!("engine error: {e}") }],
    };
    if failures.is_empty() {
        return (expected, dim, None);
    }
    let small = shrink(cs, g, &failures);
    let failures = check_generated(&small).unwrap_or(failures);
    let cf = CaseFailure { index: i, case_seed: cs, failures, shapes: small.shapes, complex: small.complex };
    (expected, dim, Some(cf))
}

/// Runs `iters` generated cases, spread over `threads` workers. The result
/// does not depend on the number of threads.
pub fn fuzz(seed: u64, iters: u64, params: &ShapeParams, threads: usize) -> FuzzSummary {
    let threads = threads.max(1).min(iters.max(1) as usize);
    let mut results: Vec<(u64, (bool, usize, Option<CaseFailure>))> = thread::scope(|s| {
        let handles: Vec<_> = (0..threads as u64)
            .map(|t| {
                s.spawn(move || {
                    (t..iters).step_by(threads).map(|i| (i, run_case(seed, i, params))).collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("fuzz worker panicked")).collect()
    });
    results.sort_by_key(|(i, _)| *i);
    let mut sum = FuzzSummary { cases: iters, ..Default::default() };
    for (_, (lemma, dim, fail)) in results {
        if lemma {
            sum.lemma_true += 1;
        } else {
            sum.lemma_false += 1;
        }
        sum.max_total_dim = sum.max_total_dim.max(dim);
        sum.failures.extend(fail);
    }
    sum
}

/// Checks every symplectic identity on one random nilpotent algebra.
pub fn check_symplectic(seed: u64, dim: usize) -> Result<Vec<Failure>, GeometryError> {
    let (g, w) = random_nilpotent_symplectic(seed, dim);
    let sp = symplectic_pair(&g, &w)?;
    let r = symplectic_report(&sp)?;
    let mut out = Vec::new();
    let mut fail = |property, ok: bool, detail: String| {
        if !ok {
            out.push(Failure { property, detail });
        }
    };
    fail(Property::SymplecticOperators, r.operators.all(), format!("{:?}", r.operators));
    fail(Property::SymplecticDuality, r.star_duality, "⋆-duality of dimensions fails".into());
    fail(
        Property::SymplecticDegeneration,
        r.doub.degenerate_first && r.doub.degenerate_second,
        format!("first {}, second {}", r.doub.degenerate_first, r.doub.degenerate_second),
    );
    fail(Property::SymplecticSlack, r.slack_consistent_with_hlc, format!("slack {:?}, HLC {}", r.slack, r.hard_lefschetz.holds));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_cases_pass() {
        let s = fuzz(1, 20, &ShapeParams::mixed(), 2);
        assert!(s.passed(), "{:?}", s.by_property());
        assert_eq!(s.lemma_true + s.lemma_false, 20);
    }

    #[test]
    fn thread_count_does_not_matter() {
        let p = ShapeParams::mixed();
        let a = fuzz(7, 6, &p, 1);
        let b = fuzz(7, 6, &p, 3);
        assert_eq!((a.lemma_true, a.max_total_dim), (b.lemma_true, b.max_total_dim));
    }

    #[test]
    fn dots_and_squares_satisfy_lemma() {
        let p = ShapeParams::parse_counts("dot:0-3,square:1-2", 3).unwrap();
        let s = fuzz(0, 10, &p, 1);
        assert!(s.passed());
        assert_eq!(s.lemma_true, 10);
        let p = ShapeParams::parse_counts("dot:0-2,hseg:1", 3).unwrap();
        assert_eq!(fuzz(0, 10, &p, 1).lemma_false, 10);
        assert_eq!(fuzz(0, 0, &p, 1).cases, 0);
    }

    #[test]
    fn symplectic_suite_small() {
        for seed in 0..3 {
            assert_eq!(check_symplectic(seed, 4).unwrap(), vec![]);
        }
    }
}

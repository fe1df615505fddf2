use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::flavors::{cohom, flavor_tables, varouchas_exactness_check, varouchas_identity_check, Flavor, FlavorTables};
use super::verdict::{lemma_verdict, pair_lemma_verdict, InducedEntry, LemmaVerdict, MapKind};
use super::{CohomError, Table};
use crate::complexes::{tot_pair, BidiffPair, ComplexError, Degree, DoubleComplex, FoldedPair};

/// Sums along one total degree and the slack of each inequality there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSlack {
    pub n: i32,
    pub bc: usize,
    pub a: usize,
    pub d1: usize,
    pub d2: usize,
    pub tot_plus: usize,
    pub tot_minus: usize,
    /// ΣBC + ΣA − ΣD1 − ΣD2
    pub thm1: i64,
    /// ΣBC + ΣA − 2·TOT₊
    pub cor_plus: i64,
    /// ΣBC + ΣA − 2·TOT₋
    pub cor_minus: i64,
    /// min(ΣD1, ΣD2) − TOT₊
    pub frolicher: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub lemma_holds: bool,
    pub thm1_equality: bool,
    pub cor_equality_plus: bool,
    pub cor_equality_minus: bool,
    /// Every slack is nonnegative.
    pub inequalities_hold: bool,
    pub lemma_conditions_agree: bool,
    /// Equality in the factor-2 inequality iff the lemma holds.
    pub equality_iff_lemma: bool,
    pub varouchas_identity: bool,
    pub varouchas_exact: bool,
    /// V1 = 0 along p+q = n+1 ⇒ BC → TOT₊ onto in degree n.
    pub v1_zero_implies_bc_tot_surjective: bool,
    /// V6 = 0 along p+q = n−1 ⇒ TOT₊ → A injective in degree n.
    pub v6_zero_implies_tot_a_injective: bool,
}

impl Verdicts {
    /// Everything that must hold for any valid bounded double complex.
    pub fn consistent(&self) -> bool {
        self.inequalities_hold
            && self.lemma_conditions_agree
            && self.equality_iff_lemma
            && self.thm1_equality_if_lemma()
            && self.varouchas_identity
            && self.varouchas_exact
            && self.v1_zero_implies_bc_tot_surjective
            && self.v6_zero_implies_tot_a_injective
    }

    fn thm1_equality_if_lemma(&self) -> bool {
        !self.lemma_holds || self.thm1_equality
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomReport {
    pub bigraded: FlavorTables<(i32, i32)>,
    pub tot_plus: Table<i32>,
    pub tot_minus: Table<i32>,
    pub lemma: LemmaVerdict,
    pub induced: Vec<InducedEntry>,
    pub slack: Vec<DegreeSlack>,
    pub verdicts: Verdicts,
}

impl CohomReport {
    pub fn total(&self, f: Flavor) -> Table<i32> {
        match f {
            Flavor::TotPlus => self.tot_plus.clone(),
            Flavor::TotMinus => self.tot_minus.clone(),
            _ => self.bigraded.get(f).collapse(|(p, q)| p + q),
        }
    }

    pub fn map_at(&self, map: MapKind, at: Degree) -> Option<&InducedEntry> {
        self.induced.iter().find(|e| e.map == map && e.at == at)
    }
}

fn diff(a: usize, b: usize) -> i64 {
    a as i64 - b as i64
}

/// Every table, induced map, verdict and inequality for a bounded double
/// complex.
pub fn frolicher_report(dc: &DoubleComplex) -> Result<CohomReport, CohomError> {
    let v = dc.validate();
    if !v.is_empty() {
        return Err(ComplexError::Invalid(v).into());
    }
    let bigraded = flavor_tables(dc)?;
    let tp = tot_pair(dc)?;
    let tot_plus = cohom(&tp, Flavor::TotPlus)?;
    let tot_minus = cohom(&tp, Flavor::TotMinus)?;
    let lemma = lemma_verdict(dc)?;

    let sums = |t: &Table<(i32, i32)>| t.collapse(|(p, q)| p + q);
    let (bc, a, d1, d2) = (sums(&bigraded.bc), sums(&bigraded.a), sums(&bigraded.d1), sums(&bigraded.d2));
    let (v1, v6) = (sums(&bigraded.v[0]), sums(&bigraded.v[5]));
    let slack: Vec<DegreeSlack> = match dc.total_range() {
        None => vec![],
        Some((lo, hi)) => (lo..=hi)
            .map(|n| {
                let s = bc.at(n) + a.at(n);
                DegreeSlack {
                    n,
                    bc: bc.at(n),
                    a: a.at(n),
                    d1: d1.at(n),
                    d2: d2.at(n),
                    tot_plus: tot_plus.at(n),
                    tot_minus: tot_minus.at(n),
                    thm1: diff(s, d1.at(n) + d2.at(n)),
                    cor_plus: diff(s, 2 * tot_plus.at(n)),
                    cor_minus: diff(s, 2 * tot_minus.at(n)),
                    frolicher: diff(d1.at(n).min(d2.at(n)), tot_plus.at(n)),
                }
            })
            .collect(),
    };

    let entry_ok = |map, n: i32, pred: fn(&super::InducedRank) -> bool| {
        lemma.maps.iter().filter(|e| e.map == map && e.at == Degree::Single(n)).all(|e| pred(&e.rank))
    };
    let degrees: Vec<i32> = slack.iter().map(|s| s.n).collect();
    let cor_equality_plus = slack.iter().all(|s| s.cor_plus == 0);
    let verdicts = Verdicts {
        lemma_holds: lemma.holds,
        thm1_equality: slack.iter().all(|s| s.thm1 == 0),
        cor_equality_plus,
        cor_equality_minus: slack.iter().all(|s| s.cor_minus == 0),
        inequalities_hold: slack.iter().all(|s| s.thm1 >= 0 && s.cor_plus >= 0 && s.cor_minus >= 0 && s.frolicher >= 0),
        lemma_conditions_agree: lemma.all_agree,
        equality_iff_lemma: cor_equality_plus == lemma.holds,
        varouchas_identity: varouchas_identity_check(&bigraded),
        varouchas_exact: varouchas_exactness_check(&bigraded),
        v1_zero_implies_bc_tot_surjective: degrees
            .iter()
            .all(|&n| v1.at(n + 1) != 0 || entry_ok(MapKind::BcToTotPlus, n, |r| r.surjective)),
        v6_zero_implies_tot_a_injective: degrees
            .iter()
            .all(|&n| v6.at(n - 1) != 0 || entry_ok(MapKind::TotPlusToA, n, |r| r.injective)),
    };
    let induced = lemma.maps.clone();
    Ok(CohomReport { bigraded, tot_plus, tot_minus, lemma, induced, slack, verdicts })
}

/// Report for a ℤ-graded pair: flavor tables by degree, the lemma
/// conditions, and the total cohomology of the regrading modulo
/// |δ̂₁ − δ̂₂| when that exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub deg1: i32,
    pub deg2: i32,
    pub tables: FlavorTables<i32>,
    /// ΣBC + ΣA − ΣD1 − ΣD2 per degree.
    pub thm1_slack: BTreeMap<i32, i64>,
    pub folded_modulus: Option<i32>,
    pub folded_tot_plus: Option<Table<i32>>,
    pub folded_tot_minus: Option<Table<i32>>,
    pub lemma: LemmaVerdict,
    pub induced: Vec<InducedEntry>,
}

pub fn pair_report(bp: &BidiffPair) -> Result<PairReport, CohomError> {
    let lemma = pair_lemma_verdict(bp)?;
    let tables = flavor_tables(bp)?;
    let thm1_slack = tables
        .keys()
        .map(|k| (k, diff(tables.bc.at(k) + tables.a.at(k), tables.d1.at(k) + tables.d2.at(k))))
        .collect();
    let folded = FoldedPair::new(bp.clone());
    let (folded_tot_plus, folded_tot_minus) = match &folded {
        Some(f) => (Some(cohom(f, Flavor::TotPlus)?), Some(cohom(f, Flavor::TotMinus)?)),
        None => (None, None),
    };
    let induced = lemma.maps.clone();
    Ok(PairReport {
        deg1: bp.deg1(),
        deg2: bp.deg2(),
        tables,
        thm1_slack,
        folded_modulus: folded.map(|f| f.modulus()),
        folded_tot_plus,
        folded_tot_minus,
        lemma,
        induced,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::fixtures::*;

    #[test]
    fn horizontal_segment_report() {
        let r = frolicher_report(&hseg()).unwrap();
        let s0 = &r.slack[0];
        assert_eq!((s0.n, s0.bc + s0.a, s0.d1 + s0.d2, s0.tot_plus), (0, 1, 1, 0));
        let s1 = &r.slack[1];
        assert_eq!((s1.n, s1.bc + s1.a, s1.d1 + s1.d2, s1.tot_plus), (1, 1, 1, 0));
        assert!(r.verdicts.thm1_equality);
        assert!(!r.verdicts.cor_equality_plus);
        assert!(!r.verdicts.lemma_holds);
        assert!(r.verdicts.consistent());
    }

    #[test]
    fn dot_report() {
        let r = frolicher_report(&dot()).unwrap();
        let v = &r.verdicts;
        assert!(v.lemma_holds && v.thm1_equality && v.cor_equality_plus && v.cor_equality_minus);
        assert!(v.consistent());
        assert_eq!(r.map_at(MapKind::BcToA, Degree::Bi(0, 0)).unwrap().rank.rank, 1);
    }

    #[test]
    fn fixtures_are_consistent() {
        for dc in [square(), vseg(), zigzag3()] {
            let r = frolicher_report(&dc).unwrap();
            assert!(r.verdicts.consistent(), "{:?} {:?}", r.verdicts, r.slack);
        }
    }

    #[test]
    fn invalid_complex_is_rejected() {
        assert!(matches!(frolicher_report(&square_with_sign(1)), Err(CohomError::Complex(ComplexError::Invalid(_)))));
    }
}

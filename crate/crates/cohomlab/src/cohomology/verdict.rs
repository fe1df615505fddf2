use std::fmt;

use serde::{Deserialize, Serialize};

use super::flavors::{constituents, total_subquotient, Flavor};
use super::{induced_rank, CohomError, InducedRank, Subquotient};
use crate::complexes::{tot_pair, BidiffPair, Degree, DoubleComplex, FoldedPair, GradedPair, Sign};

/// Identity-induced maps between flavors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MapKind {
    #[serde(rename = "BC->A")]
    BcToA,
    #[serde(rename = "BC->D1")]
    BcToD1,
    #[serde(rename = "BC->D2")]
    BcToD2,
    #[serde(rename = "D1->A")]
    D1ToA,
    #[serde(rename = "D2->A")]
    D2ToA,
    #[serde(rename = "BC->TOT+")]
    BcToTotPlus,
    #[serde(rename = "TOT+->A")]
    TotPlusToA,
    #[serde(rename = "BC->TOT-")]
    BcToTotMinus,
    #[serde(rename = "TOT-->A")]
    TotMinusToA,
}

impl MapKind {
    pub fn endpoints(self) -> (Flavor, Flavor) {
        use Flavor::*;
        match self {
            MapKind::BcToA => (BC, A),
            MapKind::BcToD1 => (BC, D1),
            MapKind::BcToD2 => (BC, D2),
            MapKind::D1ToA => (D1, A),
            MapKind::D2ToA => (D2, A),
            MapKind::BcToTotPlus => (BC, TotPlus),
            MapKind::TotPlusToA => (TotPlus, A),
            MapKind::BcToTotMinus => (BC, TotMinus),
            MapKind::TotMinusToA => (TotMinus, A),
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.endpoints();
        let name = |x: Flavor| match x {
            Flavor::D1 => "D1",
            Flavor::D2 => "D2",
            Flavor::BC => "BC",
            Flavor::A => "A",
            Flavor::TotPlus => "TOT+",
            Flavor::TotMinus => "TOT-",
        };
        write!(f, "{}->{}", name(a), name(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedEntry {
    pub map: MapKind,
    pub at: Degree,
    #[serde(flatten)]
    pub rank: InducedRank,
}

/// The eight equivalent conditions, each computed on its own. Conditions
/// 5–8 are `None` when no homogeneous regrading exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub holds: bool,
    pub conditions: [Option<bool>; 8],
    pub all_agree: bool,
    #[serde(skip)]
    pub maps: Vec<InducedEntry>,
}

fn bigraded_sq<P: GradedPair>(x: &P, k: P::Key, f: Flavor) -> Result<Subquotient, CohomError> {
    let (z, b) = constituents(x, k).flavor(f);
    Subquotient::new(x.label(k), z, b)
}

/// Conditions 1–4 at every key of `x`.
fn bigraded_maps<P: GradedPair>(x: &P, out: &mut Vec<InducedEntry>) -> Result<(), CohomError> {
    for k in x.support() {
        let c = constituents(x, k);
        let sq = |f: Flavor| -> Result<Subquotient, CohomError> {
            let (z, b) = c.flavor(f);
            Subquotient::new(x.label(k), z, b)
        };
        let (bc, a, d1, d2) = (sq(Flavor::BC)?, sq(Flavor::A)?, sq(Flavor::D1)?, sq(Flavor::D2)?);
        for (map, s, t) in [
            (MapKind::BcToA, &bc, &a),
            (MapKind::BcToD1, &bc, &d1),
            (MapKind::BcToD2, &bc, &d2),
            (MapKind::D1ToA, &d1, &a),
            (MapKind::D2ToA, &d2, &a),
        ] {
            out.push(InducedEntry { map, at: x.label(k), rank: induced_rank(s, t)? });
        }
    }
    Ok(())
}

/// Conditions 5–8 on a pair with deg δ₁ = deg δ₂.
fn total_maps<P: GradedPair>(h: &P, out: &mut Vec<InducedEntry>) -> Result<(), CohomError> {
    for k in h.support() {
        let bc = bigraded_sq(h, k, Flavor::BC)?;
        let a = bigraded_sq(h, k, Flavor::A)?;
        for (sign, to, from) in [
            (Sign::Plus, MapKind::BcToTotPlus, MapKind::TotPlusToA),
            (Sign::Minus, MapKind::BcToTotMinus, MapKind::TotMinusToA),
        ] {
            let t = total_subquotient(h, k, sign)?;
            out.push(InducedEntry { map: to, at: h.label(k), rank: induced_rank(&bc, &t)? });
            out.push(InducedEntry { map: from, at: h.label(k), rank: induced_rank(&t, &a)? });
        }
    }
    Ok(())
}

fn all_of(maps: &[InducedEntry], kinds: &[MapKind], pred: impl Fn(&InducedRank) -> bool) -> bool {
    maps.iter().filter(|e| kinds.contains(&e.map)).all(|e| pred(&e.rank))
}

fn assemble(maps: Vec<InducedEntry>, with_total: bool) -> LemmaVerdict {
    let inj = |r: &InducedRank| r.injective;
    let surj = |r: &InducedRank| r.surjective;
    let c1 = all_of(&maps, &[MapKind::BcToA], inj);
    let c2 = all_of(&maps, &[MapKind::BcToA], surj);
    let c3 = all_of(&maps, &[MapKind::BcToD1, MapKind::BcToD2], inj);
    let c4 = all_of(&maps, &[MapKind::D1ToA, MapKind::D2ToA], surj);
    let t = |kind, p: fn(&InducedRank) -> bool| with_total.then(|| all_of(&maps, &[kind], p));
    let conditions = [
        Some(c1),
        Some(c2),
        Some(c3),
        Some(c4),
        t(MapKind::BcToTotPlus, |r| r.injective),
        t(MapKind::TotPlusToA, |r| r.surjective),
        t(MapKind::BcToTotMinus, |r| r.injective),
        t(MapKind::TotMinusToA, |r| r.surjective),
    ];
    let all_agree = conditions.iter().flatten().all(|&c| c == c1);
    LemmaVerdict { holds: c1, conditions, all_agree, maps }
}

/// The δ₁δ₂-lemma conditions of a bounded double complex; 5–8 are read
/// off Tot with δ₁ and δ₂ kept apart.
pub fn lemma_verdict(dc: &DoubleComplex) -> Result<LemmaVerdict, CohomError> {
    let mut maps = Vec::new();
    bigraded_maps(dc, &mut maps)?;
    total_maps(&tot_pair(dc)?, &mut maps)?;
    Ok(assemble(maps, true))
}

/// Same for a ℤ-graded pair. With δ̂₁ ≠ δ̂₂ conditions 5–8 are evaluated on
/// the regrading modulo |δ̂₁ − δ̂₂|; with δ̂₁ = δ̂₂ they are not applicable.
pub fn pair_lemma_verdict(bp: &BidiffPair) -> Result<LemmaVerdict, CohomError> {
    let v = bp.validate();
    if !v.is_empty() {
        return Err(crate::complexes::ComplexError::Invalid(v).into());
    }
    let mut maps = Vec::new();
    bigraded_maps(bp, &mut maps)?;
    let with_total = match FoldedPair::new(bp.clone()) {
        Some(f) => {
            total_maps(&f, &mut maps)?;
            true
        }
        None => false,
    };
    Ok(assemble(maps, with_total))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::fixtures::*;

    #[test]
    fn fixtures_verdicts() {
        let all_true = [Some(true); 8];
        assert_eq!(lemma_verdict(&dot()).unwrap().conditions, all_true);
        assert_eq!(lemma_verdict(&square()).unwrap().conditions, all_true);
        for dc in [hseg(), vseg(), zigzag3()] {
            let v = lemma_verdict(&dc).unwrap();
            assert_eq!(v.conditions, [Some(false); 8]);
            assert!(!v.holds && v.all_agree);
        }
    }

    #[test]
    fn hseg_bc_to_tot_not_injective() {
        let v = lemma_verdict(&hseg()).unwrap();
        let e = v.maps.iter().find(|e| e.map == MapKind::BcToTotPlus && e.at == Degree::Single(1)).unwrap();
        assert_eq!(e.rank, InducedRank { rank: 0, injective: false, surjective: true });
        let e = v.maps.iter().find(|e| e.map == MapKind::BcToA && e.at == Degree::Bi(0, 0)).unwrap();
        assert!(e.rank.injective && !e.rank.surjective);
    }

    #[test]
    fn equal_degree_pair_skips_total_conditions() {
        let mut bp = BidiffPair::new(1, 1);
        bp.set_dim(0, 1);
        let v = pair_lemma_verdict(&bp).unwrap();
        assert_eq!(&v.conditions[4..], &[None; 4]);
        assert!(v.holds);
    }
}

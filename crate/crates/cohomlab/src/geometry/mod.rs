//! (Bi)complexes from Lie algebra data: Chevalley–Eilenberg complexes,
//! complex and symplectic structures, Hard Lefschetz, type-n regrading.
//!
//! Everything here is invariant-model cohomology: it agrees with the
//! cohomology of the corresponding nilmanifold when the algebra is
//! nilpotent (or completely solvable).

pub mod builtins;
mod complex;
pub mod exterior;
mod lie;
mod random;
mod symplectic;
mod typen;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{flavor_tables, pair_lemma_verdict, CohomError, FlavorTables, LemmaVerdict};
use crate::complexes::ComplexError;
use crate::spectral::{doub_degeneration_check, DoubDegeneration};

pub use complex::{complex_bicomplex, ComplexStructure};
pub use exterior::{Exterior, Form};
pub use lie::{LieAlgebra, Term};
pub use random::random_nilpotent_symplectic;
pub use symplectic::{
    hard_lefschetz, omega_matrix, operator_checks, primitive_and_lefschetz_decomposition, symplectic_pair, HardLefschetz,
    LefschetzDecomposition, OperatorChecks, Sl2Operators, SymplecticPair,
};
pub use typen::{type_n_view, TypeNView};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("generator index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },
    #[error("structure equation of generator {0} has a term e^j∧e^j")]
    RepeatedIndex(usize),
    #[error("d² ≠ 0 on generator {0} (Jacobi identity fails)")]
    Jacobi(usize),
    #[error("dφ of generator {0} has a (0,2) component: the structure is not integrable")]
    NotIntegrable(usize),
    #[error("ω is not a 2-form")]
    NotATwoForm,
    #[error("ω is degenerate")]
    Degenerate,
    #[error("ω is not closed")]
    NotClosed,
    #[error("symplectic structures need even dimension, got {0}")]
    OddDimension(usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cohom(#[from] CohomError),
}

/// Everything computed for a symplectic pair (d, dᴧ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticReport {
    /// D1 = de Rham, D2 = dᴧ-cohomology, BC = (d, dᴧ; ddᴧ), A = (ddᴧ; d, dᴧ).
    pub tables: FlavorTables<i32>,
    /// BC + A − 2·dR per degree.
    pub slack: BTreeMap<i32, i64>,
    pub hard_lefschetz: HardLefschetz,
    pub decomposition: LefschetzDecomposition,
    pub doub: DoubDegeneration,
    pub operators: OperatorChecks,
    /// dim D1(k) = dim D2(2n−k) and dim BC(k) = dim A(2n−k).
    pub star_duality: bool,
    /// Slack ≥ 0 everywhere, and zero total slack iff Hard Lefschetz.
    pub slack_consistent_with_hlc: bool,
    /// With Hard Lefschetz, H^{(0,•)} = PH^•.
    pub primitive_matches_h0: Option<bool>,
    /// Lemma conditions; 5–8 use the regrading modulo 2 and are experimental.
    pub lemma: LemmaVerdict,
}

pub fn symplectic_report(sp: &SymplecticPair) -> Result<SymplecticReport, GeometryError> {
    let tables = flavor_tables(&sp.pair)?;
    let top = sp.ops.top() as i32;
    let slack: BTreeMap<i32, i64> =
        (0..=top).map(|k| (k, tables.bc.at(k) as i64 + tables.a.at(k) as i64 - 2 * tables.d1.at(k) as i64)).collect();
    let hlc = hard_lefschetz(sp)?;
    let decomposition = primitive_and_lefschetz_decomposition(sp)?;
    let star_duality = (0..=top)
        .all(|k| tables.d1.at(k) == tables.d2.at(top - k) && tables.bc.at(k) == tables.a.at(top - k));
    let slack_consistent_with_hlc = slack.values().all(|&s| s >= 0) && ((slack.values().sum::<i64>() == 0) == hlc.holds);
    let primitive_matches_h0 = hlc.holds.then(|| {
        decomposition.primitive.iter().all(|(&s, &d)| decomposition.h_rs.get(&(0, s)).copied().unwrap_or(0) == d)
    });
    Ok(SymplecticReport {
        doub: doub_degeneration_check(&sp.pair)?,
        lemma: pair_lemma_verdict(&sp.pair)?,
        operators: operator_checks(&sp.ops),
        tables,
        slack,
        hard_lefschetz: hlc,
        decomposition,
        star_duality,
        slack_consistent_with_hlc,
        primitive_matches_h0,
    })
}

//! Cohomology flavors, auxiliary quotients, identity-induced maps, lemma
//! verdicts and inequality reports.

mod flavors;
mod report;
mod subquotient;
mod table;
mod verdict;

use thiserror::Error;

use crate::complexes::{ComplexError, Degree};
use crate::exactla::ExactError;

pub use flavors::{
    cohom, constituents, flavor_tables, is_homogeneous, subquotient, tot_cohomology, total_subquotient, varouchas,
    varouchas_exactness_check, varouchas_identity_check, Constituents, Flavor, FlavorTables,
};
pub use report::{frolicher_report, pair_report, CohomReport, DegreeSlack, PairReport, Verdicts};
pub use subquotient::{induced_map_rank, induced_rank, InducedRank, Subquotient};
pub use table::Table;
pub use verdict::{lemma_verdict, pair_lemma_verdict, InducedEntry, LemmaVerdict, MapKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("B ⊄ Z at {0}: the differentials violate an expected inclusion")]
    Inclusion(Degree),
    #[error("identity does not induce a map at {0}")]
    IllFormedMap(Degree),
    #[error("total flavors need δ₁ and δ₂ of equal degree")]
    NotHomogeneous,
}

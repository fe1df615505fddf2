//! Graded carriers: double complexes, bidifferential pairs, Tot and Doub.

mod bidiff;
pub(crate) mod double;
mod doub;
pub mod random;
mod tot;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::Matrix;

pub use bidiff::{BidiffPair, ZComplex};
pub use double::{fixtures, DoubleComplex};
pub use doub::{FoldedPair, PeriodicDoub};
pub use random::{from_shapes, predict, random_bicomplex, Generated, Placed, Prediction, Shape, ShapeParams};
pub use tot::{tot, tot_pair, total_differential, Sign};

/// A (bi)degree label used in diagnostics and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Degree {
    Bi(i32, i32),
    Single(i32),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Bi(p, q) => write!(f, "({p},{q})"),
            Degree::Single(k) => write!(f, "{k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "relation", rename_all = "snake_case")]
pub enum ViolationKind {
    /// Block `which` has the wrong shape.
    Shape { which: String, expected: (usize, usize), found: (usize, usize) },
    D1Squared,
    D2Squared,
    Anticommute,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub at: Degree,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::Shape { which, expected, found } => write!(
                f,
                "{which} block at {} has shape {}x{}, expected {}x{}",
                self.at, found.0, found.1, expected.0, expected.1
            ),
            ViolationKind::D1Squared => write!(f, "δ₁² ≠ 0 at {}", self.at),
            ViolationKind::D2Squared => write!(f, "δ₂² ≠ 0 at {}", self.at),
            ViolationKind::Anticommute => write!(f, "δ₁δ₂ + δ₂δ₁ ≠ 0 at {}", self.at),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("invalid differentials: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("total space in degree {0} is infinite-dimensional (δ̂₁ = δ̂₂)")]
    InfiniteTotal(i32),
    #[error("gcd(|δ̂₁|, |δ̂₂|) = {0}, expected 1")]
    Gcd(i32),
}

/// Anything with two anticommuting square-zero differentials over a discrete
/// grading. The Key translations `next1`/`next2` are where `d1`/`d2` land.
pub trait GradedPair {
    type Key: Copy + Ord + std::hash::Hash + fmt::Debug;

    fn dim(&self, k: Self::Key) -> usize;
    /// Keys to report on, ascending; includes every key with nonzero dimension
    /// in the represented window.
    fn support(&self) -> Vec<Self::Key>;
    fn next1(&self, k: Self::Key) -> Self::Key;
    fn prev1(&self, k: Self::Key) -> Self::Key;
    fn next2(&self, k: Self::Key) -> Self::Key;
    fn prev2(&self, k: Self::Key) -> Self::Key;
    /// `dim(next1 k) × dim k`.
    fn d1(&self, k: Self::Key) -> Matrix;
    /// `dim(next2 k) × dim k`.
    fn d2(&self, k: Self::Key) -> Matrix;
    fn label(&self, k: Self::Key) -> Degree;
}

/// A bigraded object whose total complex can be assembled.
pub trait DoubleLike {
    fn bidim(&self, p: i32, q: i32) -> usize;
    fn d1_block(&self, p: i32, q: i32) -> Matrix;
    fn d2_block(&self, p: i32, q: i32) -> Matrix;
    /// Nonzero summands of Tot^n, ordered by ascending p.
    fn tot_summands(&self, n: i32) -> Result<Vec<(i32, i32)>, ComplexError>;
}

pub(crate) fn check_shape(
    out: &mut Vec<Violation>,
    at: Degree,
    which: &str,
    m: &Matrix,
    expected: (usize, usize),
) -> bool {
    if m.shape() != expected {
        out.push(Violation {
            at,
            kind: ViolationKind::Shape { which: which.to_string(), expected, found: m.shape() },
        });
        return false;
    }
    true
}

/// Checks δ₁² = δ₂² = δ₁δ₂ + δ₂δ₁ = 0 at every supported key of a pair.
pub(crate) fn relation_violations<P: GradedPair>(x: &P, keys: &[P::Key]) -> Vec<Violation> {
    let mut out = Vec::new();
    for &k in keys {
        let d1 = x.d1(k);
        let d2 = x.d2(k);
        let n1 = x.next1(k);
        let n2 = x.next2(k);
        if !(&x.d1(n1) * &d1).is_zero() {
            out.push(Violation { at: x.label(k), kind: ViolationKind::D1Squared });
        }
        if !(&x.d2(n2) * &d2).is_zero() {
            out.push(Violation { at: x.label(k), kind: ViolationKind::D2Squared });
        }
        let a = &x.d1(n2) * &d2;
        let b = &x.d2(n1) * &d1;
        if a.shape() != b.shape() || !a.add(&b).is_zero() {
            out.push(Violation { at: x.label(k), kind: ViolationKind::Anticommute });
        }
    }
    out
}

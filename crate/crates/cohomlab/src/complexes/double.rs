use std::collections::{BTreeMap, BTreeSet};

use super::{check_shape, relation_violations, ComplexError, Degree, DoubleLike, GradedPair, Violation};
use crate::exactla::Matrix;

/// Bounded ℤ²-graded space with δ₁ of bidegree (1,0) and δ₂ of bidegree (0,1).
/// Absent blocks are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DoubleComplex {
    dims: BTreeMap<(i32, i32), usize>,
    d1: BTreeMap<(i32, i32), Matrix>,
    d2: BTreeMap<(i32, i32), Matrix>,
}

impl DoubleComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_dims(dims: impl IntoIterator<Item = ((i32, i32), usize)>) -> Self {
        let mut dc = Self::new();
        for ((p, q), n) in dims {
            dc.set_dim(p, q, n);
        }
        dc
    }

    pub fn set_dim(&mut self, p: i32, q: i32, n: usize) {
        if n == 0 {
            self.dims.remove(&(p, q));
        } else {
            self.dims.insert((p, q), n);
        }
    }

    /// Sets δ₁ : B^{p,q} → B^{p+1,q}.
    pub fn set_d1(&mut self, p: i32, q: i32, m: Matrix) {
        self.d1.insert((p, q), m);
    }

    /// Sets δ₂ : B^{p,q} → B^{p,q+1}.
    pub fn set_d2(&mut self, p: i32, q: i32, m: Matrix) {
        self.d2.insert((p, q), m);
    }

    pub fn dims(&self) -> &BTreeMap<(i32, i32), usize> {
        &self.dims
    }

    pub fn get_dim(&self, p: i32, q: i32) -> usize {
        self.dims.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn d1_blocks(&self) -> &BTreeMap<(i32, i32), Matrix> {
        &self.d1
    }

    pub fn d2_blocks(&self) -> &BTreeMap<(i32, i32), Matrix> {
        &self.d2
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Inclusive bounds (pmin, pmax, qmin, qmax) of the support.
    pub fn bounds(&self) -> Option<(i32, i32, i32, i32)> {
        let mut it = self.dims.keys();
        let &(p0, q0) = it.next()?;
        Some(self.dims.keys().fold((p0, p0, q0, q0), |(a, b, c, d), &(p, q)| (a.min(p), b.max(p), c.min(q), d.max(q))))
    }

    /// Inclusive range of total degrees p+q carrying a nonzero space.
    pub fn total_range(&self) -> Option<(i32, i32)> {
        let mut it = self.dims.keys().map(|&(p, q)| p + q);
        let first = it.next()?;
        Some(it.fold((first, first), |(a, b), n| (a.min(n), b.max(n))))
    }

    /// Swaps p ↔ q and δ₁ ↔ δ₂.
    pub fn transpose(&self) -> DoubleComplex {
        let sw = |m: &BTreeMap<(i32, i32), Matrix>| m.iter().map(|(&(p, q), b)| ((q, p), b.clone())).collect();
        DoubleComplex {
            dims: self.dims.iter().map(|(&(p, q), &n)| ((q, p), n)).collect(),
            d1: sw(&self.d2),
            d2: sw(&self.d1),
        }
    }

    /// Direct sum, placing `other` after `self` in every bidegree.
    pub fn direct_sum(&self, other: &DoubleComplex) -> DoubleComplex {
        let keys: BTreeSet<(i32, i32)> = self.dims.keys().chain(other.dims.keys()).copied().collect();
        let mut out = DoubleComplex::new();
        for &(p, q) in &keys {
            out.set_dim(p, q, self.get_dim(p, q) + other.get_dim(p, q));
        }
        for &(p, q) in &keys {
            let (a1, b1) = (self.d1_block(p, q), other.d1_block(p, q));
            let (a2, b2) = (self.d2_block(p, q), other.d2_block(p, q));
            let blk = |a: &Matrix, b: &Matrix| {
                let mut m = Matrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                m.put_block(0, 0, a);
                m.put_block(a.rows(), a.cols(), b);
                m
            };
            let m1 = blk(&a1, &b1);
            if !m1.is_zero() {
                out.set_d1(p, q, m1);
            }
            let m2 = blk(&a2, &b2);
            if !m2.is_zero() {
                out.set_d2(p, q, m2);
            }
        }
        out
    }

    /// Shape and relation violations; empty iff this is a valid double complex.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut shapes_ok = true;
        for (&(p, q), m) in &self.d1 {
            shapes_ok &= check_shape(&mut out, Degree::Bi(p, q), "δ₁", m, (self.get_dim(p + 1, q), self.get_dim(p, q)));
        }
        for (&(p, q), m) in &self.d2 {
            shapes_ok &= check_shape(&mut out, Degree::Bi(p, q), "δ₂", m, (self.get_dim(p, q + 1), self.get_dim(p, q)));
        }
        if shapes_ok {
            let keys: Vec<_> = self.dims.keys().copied().collect();
            out.extend(relation_violations(self, &keys));
        }
        out
    }

    pub fn validated(self) -> Result<Self, ComplexError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(ComplexError::Invalid(v))
        }
    }
}

impl DoubleLike for DoubleComplex {
    fn bidim(&self, p: i32, q: i32) -> usize {
        self.get_dim(p, q)
    }

    fn d1_block(&self, p: i32, q: i32) -> Matrix {
        self.d1.get(&(p, q)).cloned().unwrap_or_else(|| Matrix::zeros(self.get_dim(p + 1, q), self.get_dim(p, q)))
    }

    fn d2_block(&self, p: i32, q: i32) -> Matrix {
        self.d2.get(&(p, q)).cloned().unwrap_or_else(|| Matrix::zeros(self.get_dim(p, q + 1), self.get_dim(p, q)))
    }

    fn tot_summands(&self, n: i32) -> Result<Vec<(i32, i32)>, ComplexError> {
        Ok(self.dims.keys().filter(|&&(p, q)| p + q == n).copied().collect())
    }
}

impl GradedPair for DoubleComplex {
    type Key = (i32, i32);

    fn dim(&self, k: (i32, i32)) -> usize {
        self.get_dim(k.0, k.1)
    }
    fn support(&self) -> Vec<(i32, i32)> {
        self.dims.keys().copied().collect()
    }
    fn next1(&self, (p, q): (i32, i32)) -> (i32, i32) {
        (p + 1, q)
    }
    fn prev1(&self, (p, q): (i32, i32)) -> (i32, i32) {
        (p - 1, q)
    }
    fn next2(&self, (p, q): (i32, i32)) -> (i32, i32) {
        (p, q + 1)
    }
    fn prev2(&self, (p, q): (i32, i32)) -> (i32, i32) {
        (p, q - 1)
    }
    fn d1(&self, (p, q): (i32, i32)) -> Matrix {
        self.d1_block(p, q)
    }
    fn d2(&self, (p, q): (i32, i32)) -> Matrix {
        self.d2_block(p, q)
    }
    fn label(&self, (p, q): (i32, i32)) -> Degree {
        Degree::Bi(p, q)
    }
}

/// Small fixtures shared by tests across modules.
pub mod fixtures {
    use super::*;

    /// 1-dim at (0,0).
    pub fn dot() -> DoubleComplex {
        DoubleComplex::with_dims([((0, 0), 1)])
    }

    /// a at (0,0), b at (1,0), c at (0,1), d at (1,1); δ₁a=b, δ₂a=c, δ₂b=−d, δ₁c=d.
    pub fn square() -> DoubleComplex {
        square_with_sign(-1)
    }

    pub fn square_with_sign(s: i64) -> DoubleComplex {
        let mut dc = DoubleComplex::with_dims([((0, 0), 1), ((1, 0), 1), ((0, 1), 1), ((1, 1), 1)]);
        dc.set_d1(0, 0, Matrix::from_i64(&[&[1]]));
        dc.set_d2(0, 0, Matrix::from_i64(&[&[1]]));
        dc.set_d2(1, 0, Matrix::from_i64(&[&[s]]));
        dc.set_d1(0, 1, Matrix::from_i64(&[&[1]]));
        dc
    }

    /// u at (0,0) → v at (1,0) via δ₁.
    pub fn hseg() -> DoubleComplex {
        let mut dc = DoubleComplex::with_dims([((0, 0), 1), ((1, 0), 1)]);
        dc.set_d1(0, 0, Matrix::from_i64(&[&[1]]));
        dc
    }

    /// u at (0,0) → v at (0,1) via δ₂.
    pub fn vseg() -> DoubleComplex {
        let mut dc = DoubleComplex::with_dims([((0, 0), 1), ((0, 1), 1)]);
        dc.set_d2(0, 0, Matrix::from_i64(&[&[1]]));
        dc
    }

    /// Length-3 zigzag: x(0,1) →δ₁ y(1,1) ←δ₂ z(1,0).
    pub fn zigzag3() -> DoubleComplex {
        let mut dc = DoubleComplex::with_dims([((0, 1), 1), ((1, 1), 1), ((1, 0), 1)]);
        dc.set_d1(0, 1, Matrix::from_i64(&[&[1]]));
        dc.set_d2(1, 0, Matrix::from_i64(&[&[1]]));
        dc
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::complexes::ViolationKind;

    #[test]
    fn validate_examples() {
        assert!(DoubleComplex::new().validate().is_empty());
        assert!(square().validate().is_empty());
        let bad = square_with_sign(1).validate();
        assert_eq!(bad, vec![Violation { at: Degree::Bi(0, 0), kind: ViolationKind::Anticommute }]);
    }

    #[test]
    fn shape_violation_is_reported_not_panicking() {
        let mut dc = hseg();
        dc.set_d1(0, 0, Matrix::from_i64(&[&[1, 2]]));
        let v = dc.validate();
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0].kind, ViolationKind::Shape { .. }));
    }

    #[test]
    fn transpose_and_sum() {
        assert_eq!(hseg().transpose(), vseg());
        let s = square().direct_sum(&hseg());
        assert!(s.validate().is_empty());
        assert_eq!(s.get_dim(0, 0), 2);
        assert_eq!(s.total_dim(), 6);
    }
}

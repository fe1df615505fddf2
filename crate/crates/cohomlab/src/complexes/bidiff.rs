use std::collections::BTreeMap;

use super::{check_shape, relation_violations, ComplexError, Degree, GradedPair, Violation, ViolationKind};
use crate::exactla::{kernel, image, quotient_dim, Matrix};

/// Bounded ℤ-graded space with square-zero, anticommuting endomorphisms δ₁, δ₂
/// of degrees `deg1`, `deg2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidiffPair {
    dims: BTreeMap<i32, usize>,
    deg1: i32,
    deg2: i32,
    d1: BTreeMap<i32, Matrix>,
    d2: BTreeMap<i32, Matrix>,
}

impl BidiffPair {
    pub fn new(deg1: i32, deg2: i32) -> Self {
        BidiffPair { dims: BTreeMap::new(), deg1, deg2, d1: BTreeMap::new(), d2: BTreeMap::new() }
    }

    pub fn set_dim(&mut self, k: i32, n: usize) {
        if n == 0 {
            self.dims.remove(&k);
        } else {
            self.dims.insert(k, n);
        }
    }

    /// δ₁ : A^k → A^{k+deg1}.
    pub fn set_d1(&mut self, k: i32, m: Matrix) {
        self.d1.insert(k, m);
    }

    /// δ₂ : A^k → A^{k+deg2}.
    pub fn set_d2(&mut self, k: i32, m: Matrix) {
        self.d2.insert(k, m);
    }

    pub fn deg1(&self) -> i32 {
        self.deg1
    }

    pub fn deg2(&self) -> i32 {
        self.deg2
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn get_dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn d1_blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.d1
    }

    pub fn d2_blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.d2
    }

    pub fn d1_at(&self, k: i32) -> Matrix {
        self.d1.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.get_dim(k + self.deg1), self.get_dim(k)))
    }

    pub fn d2_at(&self, k: i32) -> Matrix {
        self.d2.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.get_dim(k + self.deg2), self.get_dim(k)))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut ok = true;
        for (&k, m) in &self.d1 {
            ok &= check_shape(&mut out, Degree::Single(k), "δ₁", m, (self.get_dim(k + self.deg1), self.get_dim(k)));
        }
        for (&k, m) in &self.d2 {
            ok &= check_shape(&mut out, Degree::Single(k), "δ₂", m, (self.get_dim(k + self.deg2), self.get_dim(k)));
        }
        if ok {
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

impl GradedPair for BidiffPair {
    type Key = i32;

    fn dim(&self, k: i32) -> usize {
        self.get_dim(k)
    }
    fn support(&self) -> Vec<i32> {
        self.dims.keys().copied().collect()
    }
    fn next1(&self, k: i32) -> i32 {
        k + self.deg1
    }
    fn prev1(&self, k: i32) -> i32 {
        k - self.deg1
    }
    fn next2(&self, k: i32) -> i32 {
        k + self.deg2
    }
    fn prev2(&self, k: i32) -> i32 {
        k - self.deg2
    }
    fn d1(&self, k: i32) -> Matrix {
        self.d1_at(k)
    }
    fn d2(&self, k: i32) -> Matrix {
        self.d2_at(k)
    }
    fn label(&self, k: i32) -> Degree {
        Degree::Single(k)
    }
}

/// Bounded cochain complex with a single differential of degree +1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZComplex {
    dims: BTreeMap<i32, usize>,
    d: BTreeMap<i32, Matrix>,
}

impl ZComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_dim(&mut self, k: i32, n: usize) {
        if n == 0 {
            self.dims.remove(&k);
        } else {
            self.dims.insert(k, n);
        }
    }

    pub fn set_d(&mut self, k: i32, m: Matrix) {
        self.d.insert(k, m);
    }

    pub fn dims(&self) -> &BTreeMap<i32, usize> {
        &self.dims
    }

    pub fn get_dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn d_at(&self, k: i32) -> Matrix {
        self.d.get(&k).cloned().unwrap_or_else(|| Matrix::zeros(self.get_dim(k + 1), self.get_dim(k)))
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut ok = true;
        for (&k, m) in &self.d {
            ok &= check_shape(&mut out, Degree::Single(k), "d", m, (self.get_dim(k + 1), self.get_dim(k)));
        }
        if ok {
            for &k in self.dims.keys() {
                if !(&self.d_at(k + 1) * &self.d_at(k)).is_zero() {
                    out.push(Violation { at: Degree::Single(k), kind: ViolationKind::D1Squared });
                }
            }
        }
        out
    }

    /// dim H^k for every degree in the support.
    pub fn cohomology(&self) -> BTreeMap<i32, usize> {
        self.dims
            .keys()
            .map(|&k| {
                let z = kernel(&self.d_at(k));
                let b = image(&self.d_at(k - 1));
                (k, quotient_dim(&z, &b).expect("d² = 0 makes im ⊆ ker"))
            })
            .collect()
    }

    /// Views the complex as a pair with δ₁ = d, δ₂ = 0 (both of degree 1).
    pub fn as_pair(&self) -> BidiffPair {
        let mut bp = BidiffPair::new(1, 1);
        for (&k, &n) in &self.dims {
            bp.set_dim(k, n);
        }
        for (&k, m) in &self.d {
            bp.set_d1(k, m.clone());
        }
        bp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_validation() {
        let mut bp = BidiffPair::new(1, -1);
        bp.set_dim(0, 1);
        bp.set_dim(1, 1);
        bp.set_d1(0, Matrix::from_i64(&[&[1]]));
        assert!(bp.validate().is_empty());
        bp.set_d2(1, Matrix::from_i64(&[&[1]]));
        // δ₁δ₂ + δ₂δ₁ = 1 on degree 0 and on degree 1
        assert_eq!(bp.validate().len(), 2);
    }

    #[test]
    fn zcomplex_cohomology() {
        let mut z = ZComplex::new();
        z.set_dim(0, 1);
        z.set_dim(1, 2);
        z.set_dim(2, 1);
        z.set_d(0, Matrix::from_i64(&[&[1], &[1]]));
        z.set_d(1, Matrix::from_i64(&[&[1, -1]]));
        assert!(z.validate().is_empty());
        assert_eq!(z.cohomology().into_values().collect::<Vec<_>>(), vec![0, 0, 0]);
    }
}

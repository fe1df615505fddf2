use super::{BidiffPair, ComplexError, Degree, DoubleLike, GradedPair};
use crate::exactla::Matrix;

fn gcd(a: i32, b: i32) -> i32 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The canonical double complex Doub^{p,q} = A^{δ̂₁p+δ̂₂q} ⊗ β^q of a pair,
/// with δ₁⊗id of bidegree (1,0) and δ₂⊗β of bidegree (0,1). Unbounded in
/// general, so every accessor is computed on demand; `support` reports the
/// finite window chosen at construction.
#[derive(Debug, Clone)]
pub struct PeriodicDoub {
    source: BidiffPair,
    window: (std::ops::RangeInclusive<i32>, std::ops::RangeInclusive<i32>),
}

impl PeriodicDoub {
    /// Window defaults to the box |p|, |q| ≤ max |degree| + 1.
    pub fn new(source: BidiffPair) -> Self {
        let r = source.dims().keys().map(|k| k.abs()).max().unwrap_or(0) + 1;
        PeriodicDoub { source, window: (-r..=r, -r..=r) }
    }

    pub fn with_window(mut self, p: std::ops::RangeInclusive<i32>, q: std::ops::RangeInclusive<i32>) -> Self {
        self.window = (p, q);
        self
    }

    pub fn source(&self) -> &BidiffPair {
        &self.source
    }

    /// Degree of the source feeding bidegree (p,q).
    pub fn source_degree(&self, p: i32, q: i32) -> i32 {
        self.source.deg1() * p + self.source.deg2() * q
    }

    /// Primitive translation (a,b) with Doub^{p+a,q+b} = Doub^{p,q} and
    /// identical blocks; None when both degrees vanish (every bidegree is A⁰).
    pub fn translation(&self) -> Option<(i32, i32)> {
        let (a, b) = (self.source.deg1(), self.source.deg2());
        let g = gcd(a, b);
        if g == 0 {
            return None;
        }
        let (x, y) = (b / g, -a / g);
        Some(if x < 0 || (x == 0 && y < 0) { (-x, -y) } else { (x, y) })
    }

    /// Period of Tot^n in n: Tot^{n+t} ≅ Tot^n.
    pub fn tot_period(&self) -> Option<i32> {
        let (a, b) = (self.source.deg1(), self.source.deg2());
        let m = (b - a).abs();
        if m == 0 {
            return None;
        }
        Some(m / gcd(a, m))
    }
}

impl DoubleLike for PeriodicDoub {
    fn bidim(&self, p: i32, q: i32) -> usize {
        self.source.get_dim(self.source_degree(p, q))
    }

    fn d1_block(&self, p: i32, q: i32) -> Matrix {
        self.source.d1_at(self.source_degree(p, q))
    }

    fn d2_block(&self, p: i32, q: i32) -> Matrix {
        self.source.d2_at(self.source_degree(p, q))
    }

    /// Tot^n = ⊕_q A^{δ̂₁n + (δ̂₂−δ̂₁)q}: finite exactly when δ̂₁ ≠ δ̂₂.
    fn tot_summands(&self, n: i32) -> Result<Vec<(i32, i32)>, ComplexError> {
        let (a, b) = (self.source.deg1(), self.source.deg2());
        let step = b - a;
        if step == 0 {
            if self.source.dims().is_empty() {
                return Ok(vec![]);
            }
            return Err(ComplexError::InfiniteTotal(n));
        }
        let mut out: Vec<(i32, i32)> = self
            .source
            .dims()
            .keys()
            .filter(|&&k| (k - a * n) % step == 0)
            .map(|&k| {
                let q = (k - a * n) / step;
                (n - q, q)
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

impl GradedPair for PeriodicDoub {
    type Key = (i32, i32);

    fn dim(&self, (p, q): (i32, i32)) -> usize {
        self.bidim(p, q)
    }
    fn support(&self) -> Vec<(i32, i32)> {
        let (ps, qs) = &self.window;
        ps.clone().flat_map(|p| qs.clone().map(move |q| (p, q))).filter(|&(p, q)| self.bidim(p, q) > 0).collect()
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

/// A pair regraded by residues modulo m = |δ̂₁ − δ̂₂|, so that δ₁ ± δ₂ is
/// homogeneous. The class of r is ⊕_{k ≡ r} A^k, summands k ascending.
/// Its total cohomology in class δ̂₁n mod m is that of Tot^n Doub.
#[derive(Debug, Clone)]
pub struct FoldedPair {
    source: BidiffPair,
    m: i32,
}

impl FoldedPair {
    /// None when δ̂₁ = δ̂₂ (no folding needed, nor meaningful).
    pub fn new(source: BidiffPair) -> Option<Self> {
        let m = (source.deg1() - source.deg2()).abs();
        (m != 0).then_some(FoldedPair { source, m })
    }

    pub fn modulus(&self) -> i32 {
        self.m
    }

    fn class(&self, r: i32) -> Vec<i32> {
        let r = r.rem_euclid(self.m);
        self.source.dims().keys().copied().filter(|k| k.rem_euclid(self.m) == r).collect()
    }

    fn fold(&self, r: i32, deg: i32, block: impl Fn(i32) -> Matrix) -> Matrix {
        let src = self.class(r);
        let dst = self.class(r + deg);
        let off = |ks: &[i32], k: i32| -> Option<usize> {
            let mut o = 0;
            for &x in ks {
                if x == k {
                    return Some(o);
                }
                o += self.source.get_dim(x);
            }
            None
        };
        let mut out = Matrix::zeros(self.dim(r + deg), self.dim(r));
        for &k in &src {
            if let Some(ro) = off(&dst, k + deg) {
                let co = off(&src, k).unwrap();
                out.put_block(ro, co, &block(k));
            }
        }
        out
    }
}

impl GradedPair for FoldedPair {
    type Key = i32;

    fn dim(&self, r: i32) -> usize {
        self.class(r).iter().map(|&k| self.source.get_dim(k)).sum()
    }
    fn support(&self) -> Vec<i32> {
        (0..self.m).filter(|&r| self.dim(r) > 0).collect()
    }
    fn next1(&self, r: i32) -> i32 {
        (r + self.source.deg1()).rem_euclid(self.m)
    }
    fn prev1(&self, r: i32) -> i32 {
        (r - self.source.deg1()).rem_euclid(self.m)
    }
    fn next2(&self, r: i32) -> i32 {
        (r + self.source.deg2()).rem_euclid(self.m)
    }
    fn prev2(&self, r: i32) -> i32 {
        (r - self.source.deg2()).rem_euclid(self.m)
    }
    fn d1(&self, r: i32) -> Matrix {
        self.fold(r, self.source.deg1(), |k| self.source.d1_at(k))
    }
    fn d2(&self, r: i32) -> Matrix {
        self.fold(r, self.source.deg2(), |k| self.source.d2_at(k))
    }
    fn label(&self, r: i32) -> Degree {
        Degree::Single(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doub_of_degree_zero_pair_lives_on_diagonal() {
        let mut bp = BidiffPair::new(1, -1);
        bp.set_dim(0, 1);
        let d = PeriodicDoub::new(bp);
        for p in -3..=3 {
            for q in -3..=3 {
                assert_eq!(d.bidim(p, q), usize::from(p == q));
            }
        }
        assert_eq!(d.translation(), Some((1, 1)));
        assert_eq!(d.tot_summands(0).unwrap(), vec![(0, 0)]);
        assert!(d.tot_summands(1).unwrap().is_empty());
        assert_eq!(d.tot_period(), Some(2));
    }

    #[test]
    fn equal_degrees_have_infinite_totals() {
        let mut bp = BidiffPair::new(1, 1);
        bp.set_dim(0, 1);
        assert_eq!(PeriodicDoub::new(bp.clone()).tot_summands(0), Err(ComplexError::InfiniteTotal(0)));
        assert!(FoldedPair::new(bp).is_none());
    }

    #[test]
    fn folding_collects_residue_classes() {
        let mut bp = BidiffPair::new(1, -1);
        for k in 0..4 {
            bp.set_dim(k, 1);
        }
        bp.set_d1(0, Matrix::from_i64(&[&[1]]));
        let f = FoldedPair::new(bp).unwrap();
        assert_eq!(f.modulus(), 2);
        assert_eq!((f.dim(0), f.dim(1)), (2, 2));
        // δ₁ sends A⁰ (first summand of class 0) to A¹ (first summand of class 1)
        assert_eq!(f.d1(0), Matrix::from_i64(&[&[1, 0], &[0, 0]]));
    }
}

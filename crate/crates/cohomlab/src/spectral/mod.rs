//! The two filtration spectral sequences of a bounded double complex, and
//! the dimension form of first-page degeneration for Doub of a pair.

use std::cell::RefCell;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cohomology::{cohom, flavor_tables, CohomError, Flavor, Table};
use crate::complexes::{total_differential, BidiffPair, ComplexError, DoubleComplex, DoubleLike, FoldedPair, Sign};
use crate::exactla::{Matrix, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    /// Filtration by p; E₁ is δ₂-cohomology.
    First,
    /// Filtration by q; E₁ is δ₁-cohomology.
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPage {
    pub which: Which,
    pub r: usize,
    pub dims: Table<(i32, i32)>,
    /// Rank of d_r out of each bidegree.
    pub dr_ranks: Table<(i32, i32)>,
}

/// Index of the page from which every sequence of `dc` is stationary:
/// d_r shifts the filtration degree by r, so it vanishes once r exceeds the
/// width of the support.
pub fn r_stab(dc: &DoubleComplex) -> usize {
    match dc.bounds() {
        None => 1,
        Some((p0, p1, q0, q1)) => ((p1 - p0).max(q1 - q0) + 1) as usize,
    }
}

/// First-filtration machinery on Tot with F^p = summands of index ≥ p.
struct Filtered<'a> {
    dc: &'a DoubleComplex,
    diff: HashMap<i32, Matrix>,
    /// per total degree: p of each summand (ascending) and cumulative offsets
    layout: HashMap<i32, (Vec<i32>, Vec<usize>)>,
    z_cache: RefCell<HashMap<(usize, i32, i32), Subspace>>,
}

impl<'a> Filtered<'a> {
    fn new(dc: &'a DoubleComplex) -> Result<Self, ComplexError> {
        let v = dc.validate();
        if !v.is_empty() {
            return Err(ComplexError::Invalid(v));
        }
        let mut diff = HashMap::new();
        let mut layout = HashMap::new();
        if let Some((lo, hi)) = dc.total_range() {
            for n in lo - 1..=hi + 1 {
                let s = dc.tot_summands(n)?;
                let mut offs = vec![0];
                for &(p, q) in &s {
                    offs.push(offs.last().unwrap() + dc.get_dim(p, q));
                }
                layout.insert(n, (s.iter().map(|&(p, _)| p).collect(), offs));
            }
            for n in lo - 1..=hi {
                diff.insert(n, total_differential(dc, n, Sign::Plus)?);
            }
        }
        Ok(Filtered { dc, diff, layout, z_cache: RefCell::new(HashMap::new()) })
    }

    fn dim(&self, n: i32) -> usize {
        self.layout.get(&n).map_or(0, |(_, o)| *o.last().unwrap())
    }

    /// Coordinate offset where F^p Tot^n starts.
    fn off(&self, n: i32, p: i32) -> usize {
        match self.layout.get(&n) {
            None => 0,
            Some((ps, o)) => o[ps.iter().take_while(|&&x| x < p).count()],
        }
    }

    fn d(&self, n: i32) -> Matrix {
        self.diff.get(&n).cloned().unwrap_or_else(|| Matrix::zeros(self.dim(n + 1), self.dim(n)))
    }

    /// Z_r^p(n) = {x ∈ F^p Tot^n : Dx ∈ F^{p+r} Tot^{n+1}}.
    fn z(&self, r: usize, p: i32, n: i32) -> Subspace {
        if let Some(s) = self.z_cache.borrow().get(&(r, p, n)) {
            return s.clone();
        }
        let amb = self.dim(n);
        let c0 = self.off(n, p);
        let r0 = self.off(n + 1, p + r as i32);
        let sub = self.d(n).submatrix(0..r0, c0..amb);
        let z = crate::exactla::kernel(&sub).embed(amb, c0);
        self.z_cache.borrow_mut().insert((r, p, n), z.clone());
        z
    }

    /// d·Z_{r−1}^{p−r+1}(n−1) + Z_{r−1}^{p+1}(n).
    fn den(&self, r: usize, p: i32, n: i32) -> Subspace {
        let ri = r as i32;
        let bd = self.z(r - 1, p - ri + 1, n - 1).map(&self.d(n - 1));
        bd.sum(&self.z(r - 1, p + 1, n))
    }

    fn e_dim(&self, r: usize, p: i32, n: i32) -> usize {
        self.z(r, p, n).dim() - self.den(r, p, n).dim()
    }

    fn dr_rank(&self, r: usize, p: i32, n: i32) -> usize {
        let tgt = self.den(r, p + r as i32, n + 1);
        let img = self.z(r, p, n).map(&self.d(n));
        img.sum(&tgt).dim() - tgt.dim()
    }

    fn page(&self, r: usize) -> (Table<(i32, i32)>, Table<(i32, i32)>) {
        let mut dims = Table::new();
        let mut ranks = Table::new();
        for &(p, q) in self.dc.dims().keys() {
            dims.insert((p, q), self.e_dim(r, p, p + q));
            ranks.insert((p, q), self.dr_rank(r, p, p + q));
        }
        (dims, ranks)
    }
}

fn swap(t: Table<(i32, i32)>) -> Table<(i32, i32)> {
    t.iter().map(|(&(p, q), &v)| ((q, p), v)).collect()
}

/// Page r (1 ≤ r) computed directly from the filtration.
pub fn page_at(dc: &DoubleComplex, which: Which, r: usize) -> Result<SpectralPage, ComplexError> {
    assert!(r >= 1, "pages start at r = 1");
    let t;
    let src = match which {
        Which::First => dc,
        Which::Second => {
            t = dc.transpose();
            &t
        }
    };
    let f = Filtered::new(src)?;
    let (dims, dr_ranks) = f.page(r);
    Ok(match which {
        Which::First => SpectralPage { which, r, dims, dr_ranks },
        Which::Second => SpectralPage { which, r, dims: swap(dims), dr_ranks: swap(dr_ranks) },
    })
}

/// Pages 1..=min(r_max, r_stab); later pages coincide with the last one.
pub fn pages(dc: &DoubleComplex, which: Which, r_max: usize) -> Result<Vec<SpectralPage>, ComplexError> {
    assert!(r_max >= 1, "r_max must be at least 1");
    let t;
    let src = match which {
        Which::First => dc,
        Which::Second => {
            t = dc.transpose();
            &t
        }
    };
    let f = Filtered::new(src)?;
    let top = r_max.min(r_stab(dc));
    Ok((1..=top)
        .map(|r| {
            let (dims, ranks) = f.page(r);
            match which {
                Which::First => SpectralPage { which, r, dims, dr_ranks: ranks },
                Which::Second => SpectralPage { which, r, dims: swap(dims), dr_ranks: swap(ranks) },
            }
        })
        .collect())
}

/// E_∞ = E_{r_stab}.
pub fn e_infinity(dc: &DoubleComplex, which: Which) -> Result<SpectralPage, ComplexError> {
    page_at(dc, which, r_stab(dc))
}

/// Whether every d_s with s ≥ r vanishes, decided by E_r = E_{r_stab}.
pub fn degenerates_at(dc: &DoubleComplex, which: Which, r: usize) -> Result<bool, ComplexError> {
    let rs = r_stab(dc);
    if r >= rs {
        return Ok(true);
    }
    Ok(page_at(dc, which, r)?.dims == page_at(dc, which, rs)?.dims)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    /// Residue of δ̂₁·n modulo |δ̂₁ − δ̂₂|: Tot^n Doub is the sum of A^k over this class.
    pub class: i32,
    pub tot: usize,
    pub sum_d1: usize,
    pub sum_d2: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubDegeneration {
    pub degenerate_first: bool,
    pub degenerate_second: bool,
    pub classes: Vec<ClassCount>,
}

fn gcd(a: i32, b: i32) -> i32 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// First-page degeneration of both sequences of Doub, in the dimension form:
/// dim H(Tot^n Doub) = Σ_q dim H_{δ₂}^{δ̂₁n + (δ̂₂−δ̂₁)q} (first) and the same
/// with H_{δ₁} (second). Tot^n Doub only depends on δ̂₁n modulo |δ̂₁ − δ̂₂|,
/// so one period of n is one pass over the residue classes.
pub fn doub_degeneration_check(bp: &BidiffPair) -> Result<DoubDegeneration, CohomError> {
    let v = bp.validate();
    if !v.is_empty() {
        return Err(ComplexError::Invalid(v).into());
    }
    let g = gcd(bp.deg1(), bp.deg2());
    if g != 1 {
        return Err(ComplexError::Gcd(g).into());
    }
    let Some(folded) = FoldedPair::new(bp.clone()) else {
        return Err(ComplexError::InfiniteTotal(0).into());
    };
    let m = folded.modulus();
    let tot = cohom(&folded, Flavor::TotPlus)?;
    let t = flavor_tables(bp)?;
    let per_class = |tab: &Table<i32>, r: i32| -> usize { tab.iter().filter(|(&k, _)| k.rem_euclid(m) == r).map(|(_, &v)| v).sum() };
    let classes: Vec<ClassCount> = (0..m)
        .map(|r| ClassCount { class: r, tot: tot.at(r), sum_d1: per_class(&t.d1, r), sum_d2: per_class(&t.d2, r) })
        .collect();
    Ok(DoubDegeneration {
        degenerate_first: classes.iter().all(|c| c.tot == c.sum_d2),
        degenerate_second: classes.iter().all(|c| c.tot == c.sum_d1),
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::fixtures::*;

    fn nz(t: &Table<(i32, i32)>) -> Vec<((i32, i32), usize)> {
        t.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect()
    }

    #[test]
    fn dot_is_degenerate() {
        let p = pages(&dot(), Which::First, 5).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(nz(&p[0].dims), vec![((0, 0), 1)]);
        assert_eq!(p[0].dr_ranks.total(), 0);
        assert!(degenerates_at(&dot(), Which::First, 1).unwrap());
    }

    #[test]
    fn horizontal_segment_first_sequence() {
        let p = pages(&hseg(), Which::First, 3).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(nz(&p[0].dims), vec![((0, 0), 1), ((1, 0), 1)]);
        assert_eq!(nz(&p[0].dr_ranks), vec![((0, 0), 1)]);
        assert_eq!(p[1].dims.total(), 0);
        assert!(!degenerates_at(&hseg(), Which::First, 1).unwrap());
        assert!(degenerates_at(&hseg(), Which::First, 2).unwrap());
        // the second sequence starts from δ₁-cohomology, which is zero
        assert!(degenerates_at(&hseg(), Which::Second, 1).unwrap());
    }

    #[test]
    fn square_has_zero_first_page() {
        for w in [Which::First, Which::Second] {
            assert_eq!(page_at(&square(), w, 1).unwrap().dims.total(), 0);
        }
    }

    #[test]
    fn zigzag_pages() {
        // x(0,1) →δ₁ y(1,1) ←δ₂ z(1,0). δ₂ pairs z with y, so E₁ = ⟨x⟩ and
        // nothing can hit it: E₁ = E_∞, one class in total degree 1.
        let dc = zigzag3();
        let e1 = page_at(&dc, Which::First, 1).unwrap();
        assert_eq!(nz(&e1.dims), vec![((0, 1), 1)]);
        let einf = e_infinity(&dc, Which::First).unwrap();
        assert_eq!(einf.dims.total(), 1);
    }

    #[test]
    fn doub_of_dot_pair() {
        let mut bp = BidiffPair::new(1, -1);
        bp.set_dim(0, 1);
        let d = doub_degeneration_check(&bp).unwrap();
        assert!(d.degenerate_first && d.degenerate_second);
        let mut bp = BidiffPair::new(2, -2);
        bp.set_dim(0, 1);
        assert!(matches!(doub_degeneration_check(&bp), Err(CohomError::Complex(ComplexError::Gcd(2)))));
    }
}

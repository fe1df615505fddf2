use serde::{Deserialize, Serialize};

use super::matrix::{rref, Matrix};
use super::scalar::Scalar;
use super::ExactError;

/// A subspace of `K^ambient`, stored as the canonical RREF of a spanning set.
/// Two subspaces are equal iff their stored bases are identical.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            ambient: usize,
            basis: Matrix,
        }
        let raw = Raw::deserialize(d)?;
        if raw.basis.rows() > 0 && raw.basis.cols() != raw.ambient {
            return Err(serde::de::Error::custom("basis width differs from ambient dimension"));
        }
        Ok(Subspace::span(raw.ambient, &raw.basis))
    }
}

fn pivots_of(basis: &Matrix) -> Vec<usize> {
    (0..basis.rows())
        .map(|i| basis.row(i).iter().position(|x| !x.is_zero()).expect("rref rows are nonzero"))
        .collect()
}

impl Subspace {
    /// Row space of `rows`; `rows.cols()` must equal `ambient` unless it has no rows.
    pub fn span(ambient: usize, rows: &Matrix) -> Self {
        let rows = if rows.rows() == 0 { Matrix::zeros(0, ambient) } else { rows.clone() };
        assert_eq!(rows.cols(), ambient, "spanning vectors have the wrong length");
        let (basis, _) = rref(&rows);
        let pivots = pivots_of(&basis);
        Subspace { ambient, basis, pivots }
    }

    pub fn from_vectors(ambient: usize, vs: Vec<Vec<Scalar>>) -> Self {
        Subspace::span(ambient, &Matrix::from_rows(ambient, vs))
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: vec![] }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the unit vectors `e_j` for `j` in `range`.
    pub fn coordinate(ambient: usize, range: std::ops::Range<usize>) -> Self {
        let mut basis = Matrix::zeros(range.len(), ambient);
        for (i, j) in range.clone().enumerate() {
            basis.set(i, j, Scalar::ONE);
        }
        Subspace { ambient, basis, pivots: range.collect() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check(&self, o: &Subspace) -> Result<(), ExactError> {
        if self.ambient != o.ambient {
            return Err(ExactError::DimensionMismatch { left: self.ambient, right: o.ambient });
        }
        Ok(())
    }

    /// Whether `v` lies in this subspace (reduction against the RREF basis).
    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (i, &pc) in self.pivots.iter().enumerate() {
            if w[pc].is_zero() {
                continue;
            }
            let f = w[pc].clone();
            for (j, b) in self.basis.row(i).iter().enumerate().skip(pc) {
                if !b.is_zero() {
                    let t = &f * b;
                    w[j] -= &t;
                }
            }
        }
        w.iter().all(Scalar::is_zero)
    }

    /// `v ⊆ self`.
    pub fn contains(&self, v: &Subspace) -> Result<bool, ExactError> {
        self.check(v)?;
        if v.dim() > self.dim() {
            return Ok(false);
        }
        if self.is_full() || v.is_zero() {
            return Ok(true);
        }
        Ok((0..v.dim()).all(|i| self.contains_vector(v.basis.row(i))))
    }

    /// Annihilator under the standard bilinear pairing: `{w : <u, w> = 0 ∀u}`.
    pub fn annihilator(&self) -> Subspace {
        kernel(&self.basis)
    }

    /// Embeds into `K^ambient` at coordinate `offset`.
    pub fn embed(&self, ambient: usize, offset: usize) -> Subspace {
        assert!(offset + self.ambient <= ambient);
        let mut basis = Matrix::zeros(self.dim(), ambient);
        basis.put_block(0, offset, &self.basis);
        let pivots = self.pivots.iter().map(|p| p + offset).collect();
        Subspace { ambient, basis, pivots }
    }

    /// Direct sum of subspaces laid out one after another; the result is
    /// already canonical because the blocks occupy disjoint ascending columns.
    pub fn direct_sum(parts: &[Subspace]) -> Subspace {
        let ambient = parts.iter().map(|s| s.ambient).sum();
        let dim = parts.iter().map(|s| s.dim()).sum();
        let mut basis = Matrix::zeros(dim, ambient);
        let mut pivots = Vec::with_capacity(dim);
        let (mut r, mut c) = (0, 0);
        for s in parts {
            basis.put_block(r, c, &s.basis);
            pivots.extend(s.pivots.iter().map(|p| p + c));
            r += s.dim();
            c += s.ambient;
        }
        Subspace { ambient, basis, pivots }
    }

    /// Image of this subspace under `m` (which must have `ambient` columns).
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map: matrix does not act on this space");
        if self.is_zero() {
            return Subspace::zero(m.rows());
        }
        Subspace::span(m.rows(), &(&self.basis * &m.transpose()))
    }

    /// `{x : m x ∈ self}`.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "preimage: matrix does not land in this space");
        if self.is_full() {
            return Subspace::full(m.cols());
        }
        let ann = self.annihilator();
        kernel(&(ann.basis() * m))
    }
}

/// Null space of `m`, a subspace of `K^{cols}`.
pub fn kernel(m: &Matrix) -> Subspace {
    let cols = m.cols();
    let (r, rank) = rref(m);
    if rank == 0 {
        return Subspace::full(cols);
    }
    let pivots = pivots_of(&r);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&j| !is_pivot[j]).collect();
    let vecs = free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::ZERO; cols];
            v[f] = Scalar::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            v
        })
        .collect();
    Subspace::from_vectors(cols, vecs)
}

/// Column space of `m`, a subspace of `K^{rows}`.
pub fn image(m: &Matrix) -> Subspace {
    Subspace::span(m.rows(), &m.transpose())
}

pub fn sum(u: &Subspace, v: &Subspace) -> Result<Subspace, ExactError> {
    u.check(v)?;
    if u.is_zero() || v.is_full() {
        return Ok(v.clone());
    }
    if v.is_zero() || u.is_full() {
        return Ok(u.clone());
    }
    Ok(Subspace::span(u.ambient, &u.basis.vstack(&v.basis)))
}

pub fn intersect(u: &Subspace, v: &Subspace) -> Result<Subspace, ExactError> {
    u.check(v)?;
    if u.is_zero() || v.is_full() {
        return Ok(u.clone());
    }
    if v.is_zero() || u.is_full() {
        return Ok(v.clone());
    }
    let constraints = u.annihilator().basis.vstack(v.annihilator().basis());
    Ok(kernel(&constraints))
}

/// `dim z − dim b`, provided `b ⊆ z`.
pub fn quotient_dim(z: &Subspace, b: &Subspace) -> Result<usize, ExactError> {
    if !z.contains(b)? {
        return Err(ExactError::NotASubspace);
    }
    Ok(z.dim() - b.dim())
}

impl Subspace {
    pub fn sum(&self, o: &Subspace) -> Subspace {
        sum(self, o).expect("ambient mismatch in sum")
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        intersect(self, o).expect("ambient mismatch in intersect")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(amb: usize, rows: &[&[i64]]) -> Subspace {
        if rows.is_empty() {
            return Subspace::zero(amb);
        }
        Subspace::span(amb, &Matrix::from_i64(rows))
    }

    #[test]
    fn kernel_image_examples() {
        let z = Matrix::zeros(3, 3);
        assert_eq!((kernel(&z).dim(), image(&z).dim()), (3, 0));
        let id = Matrix::identity(4);
        assert_eq!((kernel(&id).dim(), image(&id).dim()), (0, 4));
        let m = Matrix::from_i64(&[&[1, 1]]);
        assert_eq!(kernel(&m), sp(2, &[&[1, -1]]));
        assert_eq!(image(&m).dim(), 1);
        assert_eq!(image(&m).ambient_dim(), 1);
    }

    #[test]
    fn lattice_examples() {
        let e1 = sp(2, &[&[1, 0]]);
        let e2 = sp(2, &[&[0, 1]]);
        assert!(sum(&e1, &e2).unwrap().is_full());
        assert!(intersect(&e1, &e2).unwrap().is_zero());
        assert_eq!(sum(&e1, &e1).unwrap(), e1);
        assert_eq!(intersect(&e1, &e1).unwrap(), e1);
        let a = sp(3, &[&[1, 1, 0]]);
        let b = sp(3, &[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(intersect(&a, &b).unwrap(), a);
        assert!(sum(&e1, &sp(3, &[])).is_err());
    }

    #[test]
    fn quotient_examples() {
        let full = Subspace::full(2);
        assert_eq!(quotient_dim(&full, &Subspace::zero(2)), Ok(2));
        assert_eq!(quotient_dim(&full, &full), Ok(0));
        let z = sp(2, &[&[1, 0], &[0, 1]]);
        let b = sp(2, &[&[1, 1]]);
        assert_eq!(quotient_dim(&z, &b), Ok(1));
        assert_eq!(quotient_dim(&b, &z), Err(ExactError::NotASubspace));
        assert_eq!(quotient_dim(&sp(2, &[&[1, 0]]), &b), Err(ExactError::NotASubspace));
    }

    #[test]
    fn maps() {
        let m = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        let w = sp(2, &[&[1, 0]]);
        assert_eq!(w.preimage(&m), sp(3, &[&[1, 0, 0], &[0, 0, 1]]));
        assert_eq!(sp(3, &[&[0, 1, 1]]).map(&m), sp(2, &[&[0, 1]]));
        assert_eq!(Subspace::coordinate(4, 2..4), sp(4, &[&[0, 0, 1, 0], &[0, 0, 0, 1]]));
        let ds = Subspace::direct_sum(&[sp(2, &[&[1, 2]]), Subspace::zero(1), Subspace::full(1)]);
        assert_eq!(ds, sp(4, &[&[1, 2, 0, 0], &[0, 0, 0, 1]]));
    }
}

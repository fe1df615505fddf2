use std::fmt;
use std::ops::Mul;

use dashu_int::{IBig, UBig};
use serde::{Deserialize, Serialize};

use super::scalar::{lcm, Scalar};
use super::ExactError;

/// Dense row-major matrix. A `rows × cols` matrix maps column vectors of
/// length `cols` to column vectors of length `rows`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::ONE);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries length must be rows*cols");
        Matrix { rows, cols, data }
    }

    /// Builds from explicit rows; `cols` is needed for the empty case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Scalar::from(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Scalar::is_real)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                t.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data: t }
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.shape(), o.shape());
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.shape(), o.shape());
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn try_mul(&self, o: &Matrix) -> Result<Matrix, ExactError> {
        if self.cols != o.rows {
            return Err(ExactError::DimensionMismatch { left: self.cols, right: o.rows });
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        out.data[i * o.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `self` on top of `o`.
    pub fn vstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.cols, "vstack needs equal column counts");
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Matrix { rows: self.rows + o.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.rows, o.rows, "hstack needs equal row counts");
        let mut data = Vec::with_capacity(self.data.len() + o.data.len());
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(o.row(i));
        }
        Matrix { rows: self.rows, cols: self.cols + o.cols, data }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let (r, c) = (rows.len(), cols.len());
        let mut data = Vec::with_capacity(r * c);
        for i in rows {
            data.extend_from_slice(&self.row(i)[cols.clone()]);
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    pub fn rank(&self) -> usize {
        rref(self).1
    }

    pub fn inverse(&self) -> Result<Matrix, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::DimensionMismatch { left: self.rows, right: self.cols });
        }
        let n = self.rows;
        let (r, rank) = rref(&self.hstack(&Matrix::identity(n)));
        if rank < n || (0..n).any(|i| !r.get(i, i).is_one()) {
            return Err(ExactError::Singular);
        }
        Ok(r.submatrix(0..n, n..2 * n))
    }

    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "det of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = Scalar::ONE;
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a[i * n + c].is_zero()) else {
                return Scalar::ZERO;
            };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = a[c * n + c].clone();
            det = &det * &piv;
            for i in c + 1..n {
                if a[i * n + c].is_zero() {
                    continue;
                }
                let f = &a[i * n + c] / &piv;
                for j in c..n {
                    let t = &f * &a[c * n + j];
                    a[i * n + j] -= &t;
                }
            }
        }
        det
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.try_mul(o).expect("matrix product shape mismatch")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "{}{:?}", if i > 0 { ", " } else { "" }, self.row(i))?;
        }
        write!(f, "]")
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.row_vecs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows: Vec<Vec<Scalar>> = Vec::deserialize(d)?;
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(serde::de::Error::custom("ragged matrix rows"));
        }
        Ok(Matrix::from_rows(cols, rows))
    }
}

/// Gaussian integer used by the fraction-free elimination.
#[derive(Clone)]
struct GInt {
    re: IBig,
    im: IBig,
}

impl GInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GInt) -> GInt {
        if self.im.is_zero() && o.im.is_zero() {
            return GInt { re: &self.re * &o.re, im: IBig::ZERO };
        }
        GInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    fn sub(&self, o: &GInt) -> GInt {
        GInt { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    /// Exact division; the Bareiss recurrence guarantees a zero remainder.
    fn div_exact(&self, o: &GInt) -> GInt {
        if o.im.is_zero() {
            debug_assert!((&self.re % &o.re).is_zero() && (&self.im % &o.re).is_zero());
            return GInt { re: &self.re / &o.re, im: &self.im / &o.re };
        }
        let norm = &o.re * &o.re + &o.im * &o.im;
        let re = &self.re * &o.re + &self.im * &o.im;
        let im = &self.im * &o.re - &self.re * &o.im;
        debug_assert!((&re % &norm).is_zero() && (&im % &norm).is_zero());
        GInt { re: re / &norm, im: im / &norm }
    }

    fn to_scalar(&self) -> Scalar {
        Scalar::new(self.re.clone().into(), self.im.clone().into())
    }
}

/// Canonical reduced row echelon form with zero rows dropped, and the rank.
///
/// Rows are cleared to Gaussian integers, eliminated fraction-free (Bareiss,
/// skipping pivotless columns), then back-substituted exactly in ℚ(i).
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<GInt>> = (0..rows)
        .filter(|&i| m.row(i).iter().any(|x| !x.is_zero()))
        .map(|i| {
            let row = m.row(i);
            let den = row.iter().fold(UBig::ONE, |acc, x| lcm(&acc, &x.denom_lcm()));
            row.iter()
                .map(|x| {
                    let (re, im) = x.scaled_parts(&den);
                    GInt { re, im }
                })
                .collect()
        })
        .collect();
    let n = a.len();
    let mut pivots = Vec::new();
    let mut prev = GInt { re: IBig::ONE, im: IBig::ZERO };
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                let t = prow[c].mul(&row[j]);
                let t = if f.is_zero() { t } else { t.sub(&f.mul(&prow[j])) };
                row[j] = t.div_exact(&prev);
            }
            row[c] = GInt { re: IBig::ZERO, im: IBig::ZERO };
        }
        prev = top[r][c].clone();
        pivots.push(c);
        r += 1;
    }

    let mut out: Vec<Vec<Scalar>> = a[..r].iter().map(|row| row.iter().map(GInt::to_scalar).collect()).collect();
    for k in (0..r).rev() {
        let pc = pivots[k];
        let inv = out[k][pc].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in out[k][pc..].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let (above, below) = out.split_at_mut(k);
        let prow = &below[0];
        for row in above.iter_mut() {
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..cols {
                if !prow[j].is_zero() {
                    let t = &f * &prow[j];
                    row[j] -= &t;
                }
            }
        }
    }
    (Matrix::from_rows(cols, out), r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_spec_examples() {
        let id = Matrix::identity(2);
        assert_eq!(rref(&id), (id.clone(), 2));
        assert_eq!(rref(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), (Matrix::from_i64(&[&[1, 2]]), 1));
        assert_eq!(rref(&Matrix::from_i64(&[&[0, 1], &[1, 0]])), (id, 2));
    }

    #[test]
    fn rref_with_fractions_and_gaussians() {
        let m = Matrix::from_rows(
            3,
            vec![
                vec![Scalar::ratio(1, 2), Scalar::gaussian(0, 1), Scalar::from(3)],
                vec![Scalar::from(1), Scalar::gaussian(0, 2), Scalar::from(6)],
                vec![Scalar::from(0), Scalar::gaussian(1, 1), Scalar::ratio(-2, 3)],
            ],
        );
        let (r, rank) = rref(&m);
        assert_eq!(rank, 2);
        assert_eq!(r.get(0, 0), &Scalar::ONE);
        assert_eq!(r.get(1, 0), &Scalar::ZERO);
        assert_eq!(r.get(1, 1), &Scalar::ONE);
        assert_eq!(r.get(0, 1), &Scalar::ZERO);
        // reconstruct: first row of m is (1/2) * row0 + (i/2)(...) — check row space via rank.
        assert_eq!(r.vstack(&m).rank(), 2);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(rref(&Matrix::zeros(0, 3)), (Matrix::zeros(0, 3), 0));
        assert_eq!(rref(&Matrix::zeros(2, 0)).1, 0);
        assert_eq!(rref(&Matrix::zeros(3, 3)).1, 0);
    }

    #[test]
    fn inverse_and_det() {
        let m = Matrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(&m * &m.inverse().unwrap(), Matrix::identity(2));
        assert_eq!(m.det(), Scalar::from(1));
        assert_eq!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse(), Err(ExactError::Singular));
        let g = Matrix::from_rows(2, vec![vec![Scalar::i(), Scalar::ONE], vec![Scalar::ONE, Scalar::i()]]);
        assert_eq!(g.det(), Scalar::from(-2));
        assert_eq!(&g.inverse().unwrap() * &g, Matrix::identity(2));
    }
}

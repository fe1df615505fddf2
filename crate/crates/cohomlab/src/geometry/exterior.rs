//! Exterior algebra on N generators. A monomial e^{i₁}∧…∧e^{i_k} with
//! i₁ < … < i_k is stored as a bitmask; the basis of ∧^k lists k-subsets in
//! lexicographic order of their increasing index sequences.

use std::collections::{BTreeMap, HashMap};

use crate::exactla::{Matrix, Scalar};

/// A form as a sparse combination of monomials.
pub type Form = BTreeMap<u64, Scalar>;

pub fn add_term(f: &mut Form, mask: u64, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = f.entry(mask).or_insert(Scalar::ZERO);
    *e += &c;
    if e.is_zero() {
        f.remove(&mask);
    }
}

/// Indices of a monomial, ascending.
pub fn indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn monomial(idx: &[usize]) -> (u64, i32) {
    sort_sign(idx).expect("repeated index in monomial")
}

/// Sorts a sequence of generator indices, returning the monomial and the
/// sign of the permutation, or None when an index repeats.
pub fn sort_sign(seq: &[usize]) -> Option<(u64, i32)> {
    let mut mask = 0u64;
    let mut inv = 0usize;
    for (a, &x) in seq.iter().enumerate() {
        if mask >> x & 1 == 1 {
            return None;
        }
        mask |= 1 << x;
        inv += seq[..a].iter().filter(|&&y| y > x).count();
    }
    Some((mask, if inv % 2 == 0 { 1 } else { -1 }))
}

/// e^A ∧ e^B as (mask, sign), or None when they share an index.
pub fn wedge_monomials(a: u64, b: u64) -> Option<(u64, i32)> {
    if a & b != 0 {
        return None;
    }
    // one transposition per pair (x ∈ A, y ∈ B) with x > y
    let mut inv = 0u32;
    for y in indices(b) {
        inv += (a >> (y + 1)).count_ones();
    }
    Some((a | b, if inv % 2 == 0 { 1 } else { -1 }))
}

pub fn wedge(f: &Form, g: &Form) -> Form {
    let mut out = Form::new();
    for (&a, x) in f {
        for (&b, y) in g {
            if let Some((m, s)) = wedge_monomials(a, b) {
                let c = x * y;
                add_term(&mut out, m, if s < 0 { -c } else { c });
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Exterior {
    n: usize,
    basis: Vec<Vec<u64>>,
    index: HashMap<u64, usize>,
}

fn combinations(n: usize, k: usize) -> Vec<u64> {
    fn rec(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, 0, &mut out);
    out
}

impl Exterior {
    pub fn new(n: usize) -> Self {
        assert!(n < 64, "too many generators");
        let basis: Vec<Vec<u64>> = (0..=n).map(|k| combinations(n, k)).collect();
        let index = basis.iter().flat_map(|b| b.iter().enumerate().map(|(i, &m)| (m, i))).collect();
        Exterior { n, basis, index }
    }

    pub fn generators(&self) -> usize {
        self.n
    }

    pub fn dim(&self, k: i32) -> usize {
        if k < 0 || k as usize > self.n {
            0
        } else {
            self.basis[k as usize].len()
        }
    }

    pub fn basis(&self, k: usize) -> &[u64] {
        &self.basis[k]
    }

    /// Position of a monomial within its degree.
    pub fn position(&self, mask: u64) -> usize {
        self.index[&mask]
    }

    pub fn to_vector(&self, f: &Form, k: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::ZERO; self.dim(k as i32)];
        for (&m, c) in f {
            assert_eq!(m.count_ones() as usize, k, "form is not homogeneous of degree {k}");
            v[self.position(m)] = c.clone();
        }
        v
    }

    pub fn from_vector(&self, v: &[Scalar], k: usize) -> Form {
        self.basis[k].iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(&m, c)| (m, c.clone())).collect()
    }

    /// Matrix ∧^k → ∧^{k+j} of a linear map given on monomials.
    pub fn operator(&self, k: i32, j: i32, f: impl Fn(u64) -> Form) -> Matrix {
        let (src, dst) = (self.dim(k), self.dim(k + j));
        let mut m = Matrix::zeros(dst, src);
        if src == 0 || dst == 0 {
            return m;
        }
        for (c, &mono) in self.basis[k as usize].iter().enumerate() {
            for (img, x) in f(mono) {
                m.set(self.position(img), c, x);
            }
        }
        m
    }

    /// Left multiplication by a homogeneous form of degree `deg`.
    pub fn wedge_matrix(&self, form: &Form, deg: i32, k: i32) -> Matrix {
        self.operator(k, deg, |mono| wedge(form, &Form::from([(mono, Scalar::ONE)])))
    }

    /// Interior product ι_j with the j-th dual vector.
    pub fn contraction(&self, j: usize, k: i32) -> Matrix {
        self.operator(k, -1, |mono| {
            let mut f = Form::new();
            if mono >> j & 1 == 1 {
                let t = (mono & ((1u64 << j) - 1)).count_ones();
                f.insert(mono & !(1 << j), if t % 2 == 0 { Scalar::ONE } else { -Scalar::ONE });
            }
            f
        })
    }

    pub fn top(&self) -> u64 {
        (1u64 << self.n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexicographic_basis() {
        let e = Exterior::new(4);
        let two: Vec<Vec<usize>> = e.basis(2).iter().map(|&m| indices(m)).collect();
        assert_eq!(two, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!((0..=4).map(|k| e.dim(k)).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_monomials(0b10, 0b01), Some((0b11, -1)));
        assert_eq!(wedge_monomials(0b01, 0b10), Some((0b11, 1)));
        assert_eq!(wedge_monomials(0b101, 0b010), Some((0b111, -1)));
        assert_eq!(wedge_monomials(0b11, 0b10), None);
        assert_eq!(sort_sign(&[2, 0, 1]), Some((0b111, 1)));
        assert_eq!(sort_sign(&[1, 0, 2]), Some((0b111, -1)));
    }

    #[test]
    fn contraction_is_graded() {
        let e = Exterior::new(3);
        // ι_1 (e⁰∧e¹) = −e⁰
        let m = e.contraction(1, 2);
        let v = m.apply(&e.to_vector(&Form::from([(0b011, Scalar::ONE)]), 2));
        assert_eq!(e.from_vector(&v, 1), Form::from([(0b001, -Scalar::ONE)]));
    }
}

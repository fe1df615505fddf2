//! Invariant complex structures given by a (1,0)-coframe φ⁰..φ^{n−1}, and
//! the bicomplex (∧^{•,•}, ∂, ∂̄) they induce.

use super::exterior::{add_term, sort_sign, Exterior, Form};
use super::lie::{LieAlgebra, Term};
use super::GeometryError;
use crate::complexes::DoubleComplex;
use crate::exactla::{Matrix, Scalar};

/// Structure equations dφ^i written on the 2n complex generators
/// φ⁰..φ^{n−1}, φ̄⁰..φ̄^{n−1} (indices n..2n−1 are the conjugates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexStructure {
    n: usize,
    /// dφ^i as forms on 2n generators.
    dphi: Vec<Form>,
}

fn conj_index(i: usize, n: usize) -> usize {
    if i < n {
        i + n
    } else {
        i - n
    }
}

impl ComplexStructure {
    pub fn new(n: usize, equations: &[(usize, Vec<Term>)]) -> Result<Self, GeometryError> {
        let g = LieAlgebra::new(2 * n, equations)?;
        if equations.iter().any(|(i, _)| *i >= n) {
            let i = equations.iter().map(|(i, _)| *i).find(|&i| i >= n).unwrap();
            return Err(GeometryError::Index { index: i, dim: n });
        }
        Ok(ComplexStructure { n, dphi: g.structure()[..n].to_vec() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn equations(&self) -> &[Form] {
        &self.dphi
    }

    fn conjugate(&self, f: &Form) -> Form {
        let mut out = Form::new();
        for (&m, c) in f {
            let idx: Vec<usize> = (0..2 * self.n).filter(|&i| m >> i & 1 == 1).map(|i| conj_index(i, self.n)).collect();
            let (mm, s) = sort_sign(&idx).unwrap();
            let c = c.conj();
            add_term(&mut out, mm, if s < 0 { -c } else { c });
        }
        out
    }

    /// The complexified Lie algebra on φ, φ̄ with dφ̄ = conj(dφ).
    pub fn complexified(&self) -> LieAlgebra {
        let mut s = self.dphi.clone();
        s.extend(self.dphi.iter().map(|f| self.conjugate(f)));
        LieAlgebra::from_forms(2 * self.n, s)
    }

    /// (p,q) type of a monomial.
    pub fn bidegree(&self, mask: u64) -> (i32, i32) {
        let low = (1u64 << self.n) - 1;
        ((mask & low).count_ones() as i32, (mask >> self.n).count_ones() as i32)
    }

    /// No dφ^i has a φ̄∧φ̄ component.
    pub fn integrability_check(&self) -> Result<(), GeometryError> {
        for (i, f) in self.dphi.iter().enumerate() {
            if f.keys().any(|&m| self.bidegree(m) == (0, 2)) {
                return Err(GeometryError::NotIntegrable(i));
            }
        }
        Ok(())
    }
}

/// (∧^{p,q}, ∂, ∂̄) with ∂ of bidegree (1,0) as δ₁ and ∂̄ of bidegree (0,1)
/// as δ₂; each ∧^{p,q} uses the lexicographic order of the monomials of that
/// type.
pub fn complex_bicomplex(cs: &ComplexStructure) -> Result<DoubleComplex, GeometryError> {
    cs.integrability_check()?;
    let g = cs.complexified();
    g.jacobi_check()?;
    let n = cs.n;
    let ext = Exterior::new(2 * n);
    let mut by_type: std::collections::BTreeMap<(i32, i32), Vec<u64>> = Default::default();
    for k in 0..=2 * n {
        for &m in ext.basis(k) {
            by_type.entry(cs.bidegree(m)).or_default().push(m);
        }
    }
    let pos = |m: u64| -> usize { by_type[&cs.bidegree(m)].iter().position(|&x| x == m).unwrap() };
    let mut dc = DoubleComplex::new();
    for (&(p, q), ms) in &by_type {
        dc.set_dim(p, q, ms.len());
    }
    for (&(p, q), ms) in &by_type {
        let dim_of = |k: (i32, i32)| by_type.get(&k).map_or(0, |v| v.len());
        let mut del = Matrix::zeros(dim_of((p + 1, q)), ms.len());
        let mut delbar = Matrix::zeros(dim_of((p, q + 1)), ms.len());
        for (c, &m) in ms.iter().enumerate() {
            for (img, x) in g.d(&Form::from([(m, Scalar::ONE)])) {
                match cs.bidegree(img) {
                    t if t == (p + 1, q) => del.set(pos(img), c, x),
                    t if t == (p, q + 1) => delbar.set(pos(img), c, x),
                    _ => unreachable!("integrable structure produced a term of type {:?}", cs.bidegree(img)),
                }
            }
        }
        if !del.is_zero() {
            dc.set_d1(p, q, del);
        }
        if !delbar.is_zero() {
            dc.set_d2(p, q, delbar);
        }
    }
    Ok(dc.validated()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cohom, Flavor};

    #[test]
    fn abelian_bicomplex_is_trivial() {
        let cs = ComplexStructure::new(2, &[]).unwrap();
        let dc = complex_bicomplex(&cs).unwrap();
        let t = cohom(&dc, Flavor::D2).unwrap();
        for p in 0..=2 {
            for q in 0..=2 {
                let b = |k: i32| [1, 2, 1][k as usize];
                assert_eq!(t.at((p, q)), b(p) * b(q));
            }
        }
    }

    #[test]
    fn non_integrable_is_rejected() {
        // dφ⁰ = φ̄⁰∧φ̄¹ on n = 2 (generators φ⁰ φ¹ φ̄⁰ φ̄¹ = 0 1 2 3)
        let cs = ComplexStructure::new(2, &[(0, vec![Term { j: 2, k: 3, coeff: Scalar::ONE }])]).unwrap();
        assert_eq!(complex_bicomplex(&cs), Err(GeometryError::NotIntegrable(0)));
    }
}

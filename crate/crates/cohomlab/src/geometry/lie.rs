//! Lie algebras presented by the differential of their dual coframe, and
//! their Chevalley–Eilenberg complexes.

use serde::{Deserialize, Serialize};

use super::exterior::{add_term, sort_sign, Exterior, Form};
use super::GeometryError;
use crate::complexes::ZComplex;
use crate::exactla::{kernel, Matrix, Scalar, Subspace};

/// One term c·e^j∧e^k of a structure equation, j < k (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub j: usize,
    pub k: usize,
    pub coeff: Scalar,
}

/// d e^i = Σ c^i_{jk} e^j∧e^k for i = 0..dim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    structure: Vec<Form>,
}

impl LieAlgebra {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra { dim, structure: vec![Form::new(); dim] }
    }

    /// Builds the presentation; indices must be < dim. Terms with j > k are
    /// reordered with a sign and j = k is rejected.
    pub fn new(dim: usize, equations: &[(usize, Vec<Term>)]) -> Result<Self, GeometryError> {
        let mut structure = vec![Form::new(); dim];
        for (i, terms) in equations {
            if *i >= dim {
                return Err(GeometryError::Index { index: *i, dim });
            }
            for t in terms {
                if t.j >= dim || t.k >= dim {
                    return Err(GeometryError::Index { index: t.j.max(t.k), dim });
                }
                let (m, s) = sort_sign(&[t.j, t.k]).ok_or(GeometryError::RepeatedIndex(*i))?;
                add_term(&mut structure[*i], m, if s < 0 { -t.coeff.clone() } else { t.coeff.clone() });
            }
        }
        Ok(LieAlgebra { dim, structure })
    }

    pub fn from_forms(dim: usize, structure: Vec<Form>) -> Self {
        assert_eq!(structure.len(), dim);
        LieAlgebra { dim, structure }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure(&self) -> &[Form] {
        &self.structure
    }

    pub fn is_real(&self) -> bool {
        self.structure.iter().flat_map(|f| f.values()).all(|c| c.is_real())
    }

    /// d on a form, extended as a graded derivation.
    pub fn d(&self, f: &Form) -> Form {
        let mut out = Form::new();
        for (&mono, c) in f {
            let idx: Vec<usize> = (0..self.dim).filter(|&i| mono >> i & 1 == 1).collect();
            for (pos, &i) in idx.iter().enumerate() {
                let sgn = if pos % 2 == 0 { 1 } else { -1 };
                for (&two, x) in &self.structure[i] {
                    let (j, k) = (two.trailing_zeros() as usize, 63 - two.leading_zeros() as usize);
                    let mut seq = idx[..pos].to_vec();
                    seq.extend([j, k]);
                    seq.extend_from_slice(&idx[pos + 1..]);
                    if let Some((m, s)) = sort_sign(&seq) {
                        let v = c * x;
                        add_term(&mut out, m, if s * sgn < 0 { -v } else { v });
                    }
                }
            }
        }
        out
    }

    /// d²eⁱ = 0 for every generator; otherwise names the first failing one.
    pub fn jacobi_check(&self) -> Result<(), GeometryError> {
        for i in 0..self.dim {
            if !self.d(&self.structure[i]).is_empty() {
                return Err(GeometryError::Jacobi(i));
            }
        }
        Ok(())
    }

    pub fn d_matrix(&self, ext: &Exterior, k: i32) -> Matrix {
        ext.operator(k, 1, |m| self.d(&Form::from([(m, Scalar::ONE)])))
    }

    /// Chevalley–Eilenberg complex (∧•g*, d) in the lexicographic basis.
    pub fn ce_complex(&self) -> Result<ZComplex, GeometryError> {
        self.jacobi_check()?;
        let ext = Exterior::new(self.dim);
        let mut z = ZComplex::new();
        for k in 0..=self.dim as i32 {
            z.set_dim(k, ext.dim(k));
        }
        for k in 0..self.dim as i32 {
            z.set_d(k, self.d_matrix(&ext, k));
        }
        Ok(z)
    }

    /// Bracket of vectors in the dual basis of the coframe:
    /// [u,v]_i = −Σ_{j<k} c^i_{jk}(u_j v_k − u_k v_j).
    pub fn bracket(&self, u: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        self.structure
            .iter()
            .map(|f| {
                let mut s = Scalar::ZERO;
                for (&two, c) in f {
                    let (j, k) = (two.trailing_zeros() as usize, 63 - two.leading_zeros() as usize);
                    s -= &(c * &(&(&u[j] * &v[k]) - &(&u[k] * &v[j])));
                }
                s
            })
            .collect()
    }

    /// Dimensions of the lower central series g ⊇ [g,g] ⊇ … until it
    /// stabilizes; nilpotent iff the last entry is 0.
    pub fn lower_central_series(&self) -> Vec<usize> {
        let n = self.dim;
        let unit = |j: usize| (0..n).map(|i| if i == j { Scalar::ONE } else { Scalar::ZERO }).collect::<Vec<_>>();
        let mut cur = Subspace::full(n);
        let mut dims = vec![n];
        loop {
            let mut rows = Vec::new();
            for j in 0..n {
                for w in cur.basis().row_vecs() {
                    rows.push(self.bracket(&unit(j), &w));
                }
            }
            let next = Subspace::from_vectors(n, rows);
            if next.dim() == cur.dim() {
                return dims;
            }
            dims.push(next.dim());
            cur = next;
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last() == Some(&0)
    }

    /// Closed 2-forms, as a subspace of ∧² in the lexicographic basis.
    pub fn closed_two_forms(&self, ext: &Exterior) -> Subspace {
        kernel(&self.d_matrix(ext, 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::builtins;

    #[test]
    fn abelian_cohomology_is_binomial() {
        let z = LieAlgebra::abelian(4).ce_complex().unwrap();
        assert_eq!(z.cohomology().values().copied().collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn heisenberg_cohomology() {
        let g = builtins::heisenberg3();
        assert!(g.is_nilpotent());
        assert_eq!(g.lower_central_series(), vec![3, 1, 0]);
        let z = g.ce_complex().unwrap();
        assert_eq!(z.cohomology().values().copied().collect::<Vec<_>>(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn jacobi_violation_names_generator() {
        // de¹ = e²³, de³ = e⁰¹: d(de¹) = −e²∧e⁰¹ ≠ 0
        let t = |j, k| Term { j, k, coeff: Scalar::ONE };
        let g = LieAlgebra::new(4, &[(1, vec![t(2, 3)]), (3, vec![t(0, 1)])]).unwrap();
        assert_eq!(g.jacobi_check(), Err(GeometryError::Jacobi(1)));
    }

    #[test]
    fn solvable_non_nilpotent() {
        // de¹ = e⁰¹: [e₀, e₁] = −e₁, never reaches zero
        let g = LieAlgebra::new(2, &[(1, vec![Term { j: 0, k: 1, coeff: Scalar::ONE }])]).unwrap();
        assert!(g.jacobi_check().is_ok());
        assert!(!g.is_nilpotent());
    }
}

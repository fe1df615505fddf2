//! Invariant symplectic structures: the operators L, Λ, H, ⋆ and dᴧ on the
//! Chevalley–Eilenberg complex, the pair (d, dᴧ), Hard Lefschetz and the
//! primitive/Lefschetz decompositions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::exterior::{wedge, wedge_monomials, Exterior, Form};
use super::lie::LieAlgebra;
use super::GeometryError;
use crate::cohomology::{induced_map_rank, CohomError, Subquotient};
use crate::complexes::{BidiffPair, Degree};
use crate::exactla::{image, kernel, Matrix, Scalar, Subspace};

/// Operators per degree k = 0..=2n; maps leaving the range are empty
/// matrices of the right width.
#[derive(Debug, Clone)]
pub struct Sl2Operators {
    pub n: usize,
    /// d : ∧^k → ∧^{k+1}
    pub d: Vec<Matrix>,
    /// L = ω∧· : ∧^k → ∧^{k+2}
    pub l: Vec<Matrix>,
    /// Λ : ∧^k → ∧^{k−2}
    pub lambda: Vec<Matrix>,
    /// dᴧ = dΛ − Λd : ∧^k → ∧^{k−1}
    pub d_lambda: Vec<Matrix>,
    /// ⋆ : ∧^k → ∧^{2n−k}
    pub star: Vec<Matrix>,
}

impl Sl2Operators {
    pub fn top(&self) -> usize {
        2 * self.n
    }

    /// H = (n − k) on ∧^k.
    pub fn h(&self, k: usize, dim: usize) -> Matrix {
        Matrix::identity(dim).scale(&Scalar::from(self.n as i64 - k as i64))
    }

    /// L^r : ∧^k → ∧^{k+2r}.
    pub fn l_power(&self, r: usize, k: usize) -> Matrix {
        let mut m = Matrix::identity(self.d[k].cols());
        for s in 0..r {
            let at = k + 2 * s;
            m = if at <= self.top() { &self.l[at] * &m } else { Matrix::zeros(0, m.cols()) };
        }
        m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorChecks {
    pub d_lambda_squared_zero: bool,
    pub d_d_lambda_anticommute: bool,
    pub star_involution: bool,
    /// dᴧ = (−1)^{k+1} ⋆ d ⋆ on ∧^k.
    pub star_conjugates_d: bool,
    /// [H, L] = −2L
    pub h_l: bool,
    /// [H, Λ] = 2Λ
    pub h_lambda: bool,
    /// [Λ, L] = H
    pub lambda_l: bool,
    /// Λ = ⋆ L ⋆, the second route to Λ.
    pub lambda_is_star_l_star: bool,
}

impl OperatorChecks {
    pub fn all(&self) -> bool {
        self.d_lambda_squared_zero
            && self.d_d_lambda_anticommute
            && self.star_involution
            && self.star_conjugates_d
            && self.h_l
            && self.h_lambda
            && self.lambda_l
            && self.lambda_is_star_l_star
    }
}

#[derive(Debug, Clone)]
pub struct SymplecticPair {
    pub algebra: LieAlgebra,
    pub omega: Form,
    pub ops: Sl2Operators,
    /// δ₁ = d of degree +1, δ₂ = dᴧ of degree −1.
    pub pair: BidiffPair,
}

/// The antisymmetric matrix W with ω = Σ_{j<k} W_{jk} e^j∧e^k.
pub fn omega_matrix(dim: usize, omega: &Form) -> Result<Matrix, GeometryError> {
    let mut w = Matrix::zeros(dim, dim);
    for (&m, c) in omega {
        if m.count_ones() != 2 {
            return Err(GeometryError::NotATwoForm);
        }
        let (j, k) = (m.trailing_zeros() as usize, 63 - m.leading_zeros() as usize);
        w.set(j, k, c.clone());
        w.set(k, j, -c.clone());
    }
    Ok(w)
}

fn minor_det(q: &Matrix, rows: &[usize], cols: &[usize]) -> Scalar {
    let k = rows.len();
    if k == 0 {
        return Scalar::ONE;
    }
    let mut m = Matrix::zeros(k, k);
    for (a, &i) in rows.iter().enumerate() {
        for (b, &j) in cols.iter().enumerate() {
            m.set(a, b, q.get(i, j).clone());
        }
    }
    m.det()
}

fn idx(mask: u64) -> Vec<usize> {
    super::exterior::indices(mask)
}

fn build_ops(g: &LieAlgebra, omega: &Form) -> Result<Sl2Operators, GeometryError> {
    let dim = g.dim();
    let n = dim / 2;
    let ext = Exterior::new(dim);
    let w = omega_matrix(dim, omega)?;
    let winv = w.inverse().map_err(|_| GeometryError::Degenerate)?;
    let p = winv.transpose();

    let d: Vec<Matrix> = (0..=dim as i32).map(|k| g.d_matrix(&ext, k)).collect();
    let l: Vec<Matrix> = (0..=dim as i32).map(|k| ext.wedge_matrix(omega, 2, k)).collect();
    let lambda: Vec<Matrix> = (0..=dim as i32)
        .map(|k| {
            let mut m = Matrix::zeros(ext.dim(k - 2), ext.dim(k));
            if k < 2 {
                return m;
            }
            for a in 0..dim {
                for b in a + 1..dim {
                    let c = p.get(a, b);
                    if c.is_zero() {
                        continue;
                    }
                    let ii = &ext.contraction(a, k - 1) * &ext.contraction(b, k);
                    m = m.sub(&ii.scale(c));
                }
            }
            m
        })
        .collect();

    // vol = ωⁿ/n!
    let mut wn = Form::from([(0u64, Scalar::ONE)]);
    for _ in 0..n {
        wn = wedge(&wn, omega);
    }
    let fact: i64 = (1..=n as i64).product();
    let vol = wn.get(&ext.top()).cloned().unwrap_or(Scalar::ZERO) / Scalar::from(fact);
    if vol.is_zero() {
        return Err(GeometryError::Degenerate);
    }
    // α ∧ ⋆β = Π^k(α, β)·vol with Π^k(α, β) = det[ω⁻¹(a_l, b_m)]
    let star: Vec<Matrix> = (0..=dim)
        .map(|k| {
            let (src, dst) = (ext.basis(k), ext.basis(dim - k));
            let mut pairing = Matrix::zeros(src.len(), dst.len());
            for (i, &a) in src.iter().enumerate() {
                for (j, &b) in dst.iter().enumerate() {
                    if let Some((_, s)) = wedge_monomials(a, b) {
                        pairing.set(i, j, Scalar::from(s as i64) / vol.clone());
                    }
                }
            }
            let mut gram = Matrix::zeros(src.len(), src.len());
            for (i, &a) in src.iter().enumerate() {
                for (j, &b) in src.iter().enumerate() {
                    gram.set(i, j, minor_det(&winv, &idx(a), &idx(b)));
                }
            }
            &pairing.inverse().expect("wedge pairing is perfect") * &gram
        })
        .collect();

    let d_lambda: Vec<Matrix> = (0..=dim)
        .map(|k| {
            let ki = k as i32;
            let a = if k >= 2 { &d[k - 2] * &lambda[k] } else { Matrix::zeros(ext.dim(ki - 1), ext.dim(ki)) };
            let b = if k < dim { &lambda[k + 1] * &d[k] } else { Matrix::zeros(ext.dim(ki - 1), ext.dim(ki)) };
            a.sub(&b)
        })
        .collect();

    Ok(Sl2Operators { n, d, l, lambda, d_lambda, star })
}

/// Checks every sl(2) and ⋆ identity degree by degree.
pub fn operator_checks(ops: &Sl2Operators) -> OperatorChecks {
    let top = ops.top();
    let dims: Vec<usize> = ops.d.iter().map(|m| m.cols()).collect();
    let zero = |m: &Matrix| m.is_zero();
    let mut c = OperatorChecks {
        d_lambda_squared_zero: true,
        d_d_lambda_anticommute: true,
        star_involution: true,
        star_conjugates_d: true,
        h_l: true,
        h_lambda: true,
        lambda_l: true,
        lambda_is_star_l_star: true,
    };
    for k in 0..=top {
        let h = ops.h(k, dims[k]);
        if k >= 1 {
            c.d_lambda_squared_zero &= zero(&(&ops.d_lambda[k - 1] * &ops.d_lambda[k]));
            // d dᴧ + dᴧ d on ∧^k lands in ∧^k
            let a = &ops.d[k - 1] * &ops.d_lambda[k];
            let b = if k < top { &ops.d_lambda[k + 1] * &ops.d[k] } else { Matrix::zeros(dims[k], dims[k]) };
            c.d_d_lambda_anticommute &= zero(&a.add(&b));
            // (−1)^{k+1} ⋆ d ⋆ : ∧^k → ∧^{2n−k} → ∧^{2n−k+1} → ∧^{k−1}
            let sds = &(&ops.star[top - k + 1] * &ops.d[top - k]) * &ops.star[k];
            let sds = if (k + 1) % 2 == 0 { sds } else { sds.scale(&Scalar::from(-1)) };
            c.star_conjugates_d &= sds == ops.d_lambda[k];
        }
        c.star_involution &= &ops.star[top - k] * &ops.star[k] == Matrix::identity(dims[k]);
        if k + 2 <= top {
            let hl = ops.h(k + 2, dims[k + 2]);
            let comm = (&hl * &ops.l[k]).sub(&(&ops.l[k] * &h));
            c.h_l &= comm == ops.l[k].scale(&Scalar::from(-2));
        }
        if k >= 2 {
            let hm = ops.h(k - 2, dims[k - 2]);
            let comm = (&hm * &ops.lambda[k]).sub(&(&ops.lambda[k] * &h));
            c.h_lambda &= comm == ops.lambda[k].scale(&Scalar::from(2));
            let sls = &(&ops.star[top - k + 2] * &ops.l[top - k]) * &ops.star[k];
            c.lambda_is_star_l_star &= sls == ops.lambda[k];
        }
        // [Λ, L] = ΛL − LΛ on ∧^k
        let ll = if k + 2 <= top { &ops.lambda[k + 2] * &ops.l[k] } else { Matrix::zeros(dims[k], dims[k]) };
        let lo = if k >= 2 { &ops.l[k - 2] * &ops.lambda[k] } else { Matrix::zeros(dims[k], dims[k]) };
        c.lambda_l &= ll.sub(&lo) == h;
    }
    c
}

/// Builds (d, dᴧ) after checking that ω is a closed nondegenerate 2-form.
pub fn symplectic_pair(g: &LieAlgebra, omega: &Form) -> Result<SymplecticPair, GeometryError> {
    g.jacobi_check()?;
    if g.dim() % 2 != 0 {
        return Err(GeometryError::OddDimension(g.dim()));
    }
    let w = omega_matrix(g.dim(), omega)?;
    if w.det().is_zero() {
        return Err(GeometryError::Degenerate);
    }
    if !g.d(omega).is_empty() {
        return Err(GeometryError::NotClosed);
    }
    let ops = build_ops(g, omega)?;
    let mut pair = BidiffPair::new(1, -1);
    for (k, m) in ops.d.iter().enumerate() {
        pair.set_dim(k as i32, m.cols());
    }
    for k in 0..=ops.top() {
        if k < ops.top() {
            pair.set_d1(k as i32, ops.d[k].clone());
        }
        if k > 0 {
            pair.set_d2(k as i32, ops.d_lambda[k].clone());
        }
    }
    let pair = pair.validated()?;
    Ok(SymplecticPair { algebra: g.clone(), omega: omega.clone(), ops, pair })
}

impl SymplecticPair {
    pub fn de_rham(&self, k: usize) -> Subquotient {
        let z = kernel(&self.ops.d[k]);
        let b = if k == 0 { Subspace::zero(z.ambient_dim()) } else { image(&self.ops.d[k - 1]) };
        Subquotient::new(Degree::Single(k as i32), z, b).expect("d² = 0")
    }

    pub fn half_dim(&self) -> usize {
        self.ops.n
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HardLefschetz {
    /// k ↦ L^k : H^{n−k} → H^{n+k} is an isomorphism.
    pub per_k: BTreeMap<usize, bool>,
    pub holds: bool,
}

pub fn hard_lefschetz(sp: &SymplecticPair) -> Result<HardLefschetz, CohomError> {
    let n = sp.half_dim();
    let mut per_k = BTreeMap::new();
    for k in 0..=n {
        let src = sp.de_rham(n - k);
        let dst = sp.de_rham(n + k);
        let r = induced_map_rank(&sp.ops.l_power(k, n - k), &src, &dst)?;
        per_k.insert(k, r.injective && r.surjective);
    }
    let holds = per_k.values().all(|&b| b);
    Ok(HardLefschetz { per_k, holds })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzDecomposition {
    /// Primitive cohomology dims by degree.
    pub primitive: BTreeMap<usize, usize>,
    /// (r, s) ↦ dim H^{(r,s)}, the classes [L^r γ] with γ ∈ ∧^s, dγ = 0, Λγ = 0.
    #[serde(with = "rs_entries")]
    pub h_rs: BTreeMap<(usize, usize), usize>,
    /// Per degree: Σ_r H^{(r, j−2r)} is direct and equals H^j.
    pub per_degree: BTreeMap<usize, bool>,
    pub decomposition_holds: bool,
}

/// JSON maps need string keys; store H^{(r,s)} as a list of entries.
mod rs_entries {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        r: usize,
        s: usize,
        dim: usize,
    }

    pub fn serialize<S: Serializer>(m: &BTreeMap<(usize, usize), usize>, ser: S) -> Result<S::Ok, S::Error> {
        ser.collect_seq(m.iter().map(|(&(r, s), &dim)| Entry { r, s, dim }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BTreeMap<(usize, usize), usize>, D::Error> {
        Ok(Vec::<Entry>::deserialize(de)?.into_iter().map(|e| ((e.r, e.s), e.dim)).collect())
    }
}

pub fn primitive_and_lefschetz_decomposition(sp: &SymplecticPair) -> Result<LefschetzDecomposition, CohomError> {
    let ops = &sp.ops;
    let top = ops.top();
    let closed_prim: Vec<Subspace> = (0..=top).map(|k| kernel(&ops.d[k]).intersect(&kernel(&ops.lambda[k]))).collect();
    let mut primitive = BTreeMap::new();
    for k in 0..=top {
        let z = closed_prim[k].intersect(&kernel(&ops.d_lambda[k]));
        let b = if k == 0 {
            Subspace::zero(z.ambient_dim())
        } else {
            kernel(&ops.d_lambda[k - 1]).intersect(&kernel(&ops.lambda[k - 1])).map(&ops.d[k - 1])
        };
        primitive.insert(k, Subquotient::new(Degree::Single(k as i32), z, b)?.dim());
    }
    let mut h_rs = BTreeMap::new();
    let mut per_degree = BTreeMap::new();
    for j in 0..=top {
        let dr = sp.de_rham(j);
        let mut total = dr.b.clone();
        let mut sum_dims = 0;
        for r in 0..=j / 2 {
            let s = j - 2 * r;
            let img = closed_prim[s].map(&ops.l_power(r, s));
            let dim = img.sum(&dr.b).dim() - dr.b.dim();
            h_rs.insert((r, s), dim);
            sum_dims += dim;
            total = total.sum(&img);
        }
        let spanned = total.dim() - dr.b.dim();
        per_degree.insert(j, spanned == dr.dim() && sum_dims == dr.dim());
    }
    let decomposition_holds = per_degree.values().all(|&b| b);
    Ok(LefschetzDecomposition { primitive, h_rs, per_degree, decomposition_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{flavor_tables, Table};
    use crate::geometry::builtins;

    fn vals(t: &Table<i32>) -> Vec<usize> {
        t.values().copied().collect()
    }

    #[test]
    fn abelian_plane() {
        let (g, w) = builtins::abelian_symplectic(1);
        let sp = symplectic_pair(&g, &w).unwrap();
        assert!(operator_checks(&sp.ops).all(), "{:?}", operator_checks(&sp.ops));
        // Λ(e⁰∧e¹) = 1
        assert_eq!(sp.ops.lambda[2], Matrix::from_i64(&[&[1]]));
        assert!(sp.ops.d_lambda.iter().all(|m| m.is_zero()));
        let t = flavor_tables(&sp.pair).unwrap();
        for f in [&t.d1, &t.d2, &t.bc, &t.a] {
            assert_eq!(vals(f), vec![1, 2, 1]);
        }
        assert!(hard_lefschetz(&sp).unwrap().holds);
        let dec = primitive_and_lefschetz_decomposition(&sp).unwrap();
        assert_eq!(dec.primitive.values().copied().collect::<Vec<_>>(), vec![1, 2, 0]);
        assert!(dec.decomposition_holds);
    }

    #[test]
    fn abelian_four_torus() {
        let (g, w) = builtins::abelian_symplectic(2);
        let sp = symplectic_pair(&g, &w).unwrap();
        assert!(operator_checks(&sp.ops).all());
        assert!(hard_lefschetz(&sp).unwrap().holds);
        assert!(primitive_and_lefschetz_decomposition(&sp).unwrap().decomposition_holds);
    }

    #[test]
    fn rejects_bad_forms() {
        let g = LieAlgebra::abelian(2);
        assert!(matches!(symplectic_pair(&g, &Form::new()), Err(GeometryError::Degenerate)));
        let h = builtins::heisenberg3();
        assert!(matches!(symplectic_pair(&h, &Form::from([(0b011, Scalar::ONE)])), Err(GeometryError::OddDimension(3))));
    }
}

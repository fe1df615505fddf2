//! Built-in Lie algebra data (0-based coframe indices).

use super::complex::ComplexStructure;
use super::exterior::Form;
use super::lie::{LieAlgebra, Term};
use crate::exactla::Scalar;

fn t(j: usize, k: usize, c: i64) -> Term {
    Term { j, k, coeff: Scalar::from(c) }
}

/// de² = e⁰∧e¹.
pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::new(3, &[(2, vec![t(0, 1, 1)])]).unwrap()
}

/// Real coframe of the Iwasawa algebra:
/// de⁴ = −e⁰²+e¹³, de⁵ = −e⁰³−e¹².
pub fn iwasawa_real() -> LieAlgebra {
    LieAlgebra::new(6, &[(4, vec![t(0, 2, -1), t(1, 3, 1)]), (5, vec![t(0, 3, -1), t(1, 2, -1)])]).unwrap()
}

/// ω = e⁰⁵ + e¹⁴ + e²³.
pub fn iwasawa_omega() -> Form {
    Form::from([(1 << 0 | 1 << 5, Scalar::ONE), (1 << 1 | 1 << 4, Scalar::ONE), (1 << 2 | 1 << 3, Scalar::ONE)])
}

/// Holomorphic coframe of the Iwasawa manifold. For the group law
/// (z, w) ↦ (z₁+w₁, z₂+w₂, z₃+z₁w₂+w₃) the left-invariant forms are
/// dz₁, dz₂, dz₃ − z₁dz₂, so dφ² = −φ⁰∧φ¹.
pub fn iwasawa_complex() -> ComplexStructure {
    ComplexStructure::new(3, &[(2, vec![t(0, 1, -1)])]).unwrap()
}

/// Abelian algebra of dimension 2n with ω = Σ e^{2i}∧e^{2i+1}.
pub fn abelian_symplectic(n: usize) -> (LieAlgebra, Form) {
    let w = (0..n).map(|i| (1u64 << (2 * i) | 1 << (2 * i + 1), Scalar::ONE)).collect();
    (LieAlgebra::abelian(2 * n), w)
}

pub fn abelian_complex(n: usize) -> ComplexStructure {
    ComplexStructure::new(n, &[]).unwrap()
}

/// Data behind a builtin name: a real algebra, optionally with a complex
/// or symplectic structure.
#[derive(Debug, Clone)]
pub struct Builtin {
    pub algebra: LieAlgebra,
    pub complex: Option<ComplexStructure>,
    pub omega: Option<Form>,
}

pub const NAMES: &[&str] = &["iwasawa-complex", "iwasawa-symplectic", "abelian:<n>", "heisenberg3"];

pub fn builtin(name: &str) -> Option<Builtin> {
    match name {
        "iwasawa-complex" => Some(Builtin { algebra: iwasawa_real(), complex: Some(iwasawa_complex()), omega: None }),
        "iwasawa-symplectic" => Some(Builtin { algebra: iwasawa_real(), complex: None, omega: Some(iwasawa_omega()) }),
        "heisenberg3" => Some(Builtin { algebra: heisenberg3(), complex: None, omega: None }),
        _ => {
            let n: usize = name.strip_prefix("abelian:")?.parse().ok()?;
            if n == 0 || n > 12 {
                return None;
            }
            if n % 2 == 0 {
                let (algebra, w) = abelian_symplectic(n / 2);
                Some(Builtin { algebra, complex: Some(abelian_complex(n / 2)), omega: Some(w) })
            } else {
                Some(Builtin { algebra: LieAlgebra::abelian(n), complex: None, omega: None })
            }
        }
    }
}

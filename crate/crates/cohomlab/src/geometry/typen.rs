//! Regrading of a double complex along k = p − q.

use serde::{Deserialize, Serialize};

use crate::cohomology::{flavor_tables, CohomError, Table};
use crate::complexes::DoubleComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeNView {
    /// δ₁-cohomology (∂ for a complex structure)
    pub d1: Table<i32>,
    /// δ₂-cohomology (∂̄)
    pub d2: Table<i32>,
    pub bc: Table<i32>,
    pub a: Table<i32>,
    /// BC + A ≥ D1 + D2 for every k.
    pub inequality_holds: bool,
    /// BC + A = D1 + D2 for every k.
    pub equality: bool,
}

impl TypeNView {
    pub fn range(&self) -> Option<(i32, i32)> {
        Some((*self.d1.keys().next()?, *self.d1.keys().next_back()?))
    }
}

pub fn type_n_view(dc: &DoubleComplex) -> Result<TypeNView, CohomError> {
    let t = flavor_tables(dc)?;
    let along = |x: &Table<(i32, i32)>| x.collapse(|(p, q)| p - q);
    let (d1, d2, bc, a) = (along(&t.d1), along(&t.d2), along(&t.bc), along(&t.a));
    let keys: Vec<i32> = d1.keys().copied().collect();
    let lhs = |k| bc.at(k) + a.at(k);
    let rhs = |k| d1.at(k) + d2.at(k);
    Ok(TypeNView {
        inequality_holds: keys.iter().all(|&k| lhs(k) >= rhs(k)),
        equality: keys.iter().all(|&k| lhs(k) == rhs(k)),
        d1,
        d2,
        bc,
        a,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{builtins, complex_bicomplex};

    #[test]
    fn abelian_curve() {
        let dc = complex_bicomplex(&builtins::abelian_complex(1)).unwrap();
        let v = type_n_view(&dc).unwrap();
        assert_eq!(v.d2.values().copied().collect::<Vec<_>>(), vec![1, 2, 1]);
        assert_eq!(v.range(), Some((-1, 1)));
        assert!(v.equality);
    }
}

use serde::{Deserialize, Serialize};

use super::CohomError;
use crate::complexes::Degree;
use crate::exactla::{Matrix, Subspace};

/// Z/B with B ⊆ Z inside one coordinate space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subquotient {
    pub at: Degree,
    pub z: Subspace,
    pub b: Subspace,
}

impl Subquotient {
    pub fn new(at: Degree, z: Subspace, b: Subspace) -> Result<Self, CohomError> {
        if !z.contains(&b)? {
            return Err(CohomError::Inclusion(at));
        }
        Ok(Subquotient { at, z, b })
    }

    pub fn dim(&self) -> usize {
        self.z.dim() - self.b.dim()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedRank {
    pub rank: usize,
    pub injective: bool,
    pub surjective: bool,
}

/// Rank of the map src → dst induced by the identity.
pub fn induced_rank(src: &Subquotient, dst: &Subquotient) -> Result<InducedRank, CohomError> {
    if !dst.z.contains(&src.z)? || !dst.b.contains(&src.b)? {
        return Err(CohomError::IllFormedMap(src.at));
    }
    Ok(ranks(src, dst, &src.z))
}

/// Rank of the map src → dst induced by the linear map `m`.
pub fn induced_map_rank(m: &Matrix, src: &Subquotient, dst: &Subquotient) -> Result<InducedRank, CohomError> {
    let mz = src.z.map(m);
    if !dst.z.contains(&mz)? || !dst.b.contains(&src.b.map(m))? {
        return Err(CohomError::IllFormedMap(src.at));
    }
    Ok(ranks(src, dst, &mz))
}

/// rank = dim(M·Z_src + B_dst) − dim B_dst.
fn ranks(src: &Subquotient, dst: &Subquotient, image_z: &Subspace) -> InducedRank {
    let rank = image_z.sum(&dst.b).dim() - dst.b.dim();
    InducedRank { rank, injective: rank == src.dim(), surjective: rank == dst.dim() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(z: Subspace, b: Subspace) -> Subquotient {
        Subquotient::new(Degree::Single(0), z, b).unwrap()
    }

    #[test]
    fn identity_map_is_bijective() {
        let s = sq(Subspace::full(3), Subspace::coordinate(3, 0..1));
        let r = induced_rank(&s, &s).unwrap();
        assert_eq!(r, InducedRank { rank: 2, injective: true, surjective: true });
    }

    #[test]
    fn ill_formed_maps_are_rejected() {
        let small = sq(Subspace::coordinate(2, 0..1), Subspace::zero(2));
        let other = sq(Subspace::coordinate(2, 1..2), Subspace::zero(2));
        assert!(matches!(induced_rank(&small, &other), Err(CohomError::IllFormedMap(_))));
        assert!(matches!(
            Subquotient::new(Degree::Single(0), Subspace::zero(2), Subspace::full(2)),
            Err(CohomError::Inclusion(_))
        ));
    }

    #[test]
    fn map_into_quotient() {
        // e1 ↦ e1 modulo span(e1): rank 0; e2 ↦ e2: rank 1
        let src = sq(Subspace::full(2), Subspace::zero(2));
        let dst = sq(Subspace::full(2), Subspace::coordinate(2, 0..1));
        let r = induced_map_rank(&Matrix::identity(2), &src, &dst).unwrap();
        assert_eq!(r, InducedRank { rank: 1, injective: false, surjective: true });
    }
}

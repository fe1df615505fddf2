//! Random nilpotent Lie algebras with random invariant symplectic forms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::exterior::{Exterior, Form};
use super::lie::LieAlgebra;
use super::symplectic::omega_matrix;
use crate::exactla::{Scalar, Subspace};

fn random_element(rng: &mut ChaCha8Rng, s: &Subspace, ext: &Exterior) -> Form {
    let mut v = vec![Scalar::ZERO; s.ambient_dim()];
    for row in s.basis().row_vecs() {
        let c = Scalar::from(rng.gen_range(-2i64..=2));
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(&row) {
            *x += &(&c * y);
        }
    }
    ext.from_vector(&v, 2)
}

/// A nilpotent algebra of dimension `dim` whose eⁱ has a random closed
/// differential in the earlier generators, together with a random closed
/// nondegenerate 2-form. Deterministic in the seed.
pub fn random_nilpotent_symplectic(seed: u64, dim: usize) -> (LieAlgebra, Form) {
    assert!(dim % 2 == 0 && dim >= 2, "symplectic algebras have even dimension");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut structure: Vec<Form> = Vec::with_capacity(dim);
        for i in 0..dim {
            if i < 2 || rng.gen_bool(0.25) {
                structure.push(Form::new());
                continue;
            }
            let sub = LieAlgebra::from_forms(i, structure.clone());
            let ext = Exterior::new(i);
            let closed = sub.closed_two_forms(&ext);
            structure.push(random_element(&mut rng, &closed, &ext));
        }
        let g = LieAlgebra::from_forms(dim, structure);
        let ext = Exterior::new(dim);
        let closed = g.closed_two_forms(&ext);
        for _ in 0..16 {
            let w = random_element(&mut rng, &closed, &ext);
            if !omega_matrix(dim, &w).unwrap().det().is_zero() {
                return (g, w);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_algebras_are_nilpotent_and_symplectic() {
        for seed in 0..10 {
            for dim in [2, 4, 6] {
                let (g, w) = random_nilpotent_symplectic(seed, dim);
                assert!(g.jacobi_check().is_ok());
                assert!(g.is_nilpotent());
                assert!(g.d(&w).is_empty());
            }
        }
        assert_eq!(random_nilpotent_symplectic(3, 6), random_nilpotent_symplectic(3, 6));
    }
}

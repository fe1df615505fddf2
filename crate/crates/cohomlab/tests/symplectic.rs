use cohomlab::geometry::{random_nilpotent_symplectic, symplectic_pair, symplectic_report};
use cohomlab::properties::check_symplectic;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_nilpotent_symplectic_identities(seed in any::<u64>(), half in 1usize..=3) {
        let f = check_symplectic(seed, 2 * half).unwrap();
        prop_assert!(f.is_empty(), "{:?}", f);
    }

    #[test]
    fn euler_characteristics_agree(seed in any::<u64>(), half in 1usize..=3) {
        // χ of a nonzero nilpotent algebra vanishes; dᴧ-cohomology is its
        // ⋆-mirror k ↦ 2n − k, which keeps parity
        let (g, w) = random_nilpotent_symplectic(seed, 2 * half);
        let r = symplectic_report(&symplectic_pair(&g, &w).unwrap()).unwrap();
        let chi = |t: &cohomlab::cohomology::Table<i32>| t.iter().map(|(&k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum::<i64>();
        prop_assert_eq!(chi(&r.tables.d1), 0);
        prop_assert_eq!(chi(&r.tables.d1), chi(&r.tables.d2));
    }
}

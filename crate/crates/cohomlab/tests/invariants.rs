use std::collections::BTreeMap;

use cohomlab::cohomology::{frolicher_report, CohomReport, Table};
use cohomlab::complexes::{random_bicomplex, DoubleComplex, ShapeParams};
use cohomlab::exactla::{intersect, kernel, sum, Matrix, Scalar, Subspace};
use cohomlab::properties::check_generated;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5, -9i64..=9, 1i64..=5)
        .prop_map(|(a, b, c, d)| Scalar::ratio(a, b) + Scalar::ratio(c, d) * Scalar::i())
}

fn matrix(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        // small integer entries with many zeros, so ranks vary
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -2i64..=2], r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(Scalar::from).collect()))
    })
}

/// Unit upper-triangular with integer entries: invertible over ℤ.
fn unitriangular(n: usize, seed: &[i64]) -> Matrix {
    let mut m = Matrix::identity(n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, Scalar::from(seed[k % seed.len()]));
            k += 1;
        }
    }
    m
}

fn nz<K: Ord + Copy>(t: &Table<K>) -> BTreeMap<K, usize> {
    t.iter().filter(|(_, &v)| v != 0).map(|(&k, &v)| (k, v)).collect()
}

fn tables(r: &CohomReport) -> Vec<BTreeMap<(i32, i32), usize>> {
    let b = &r.bigraded;
    [&b.d1, &b.d2, &b.bc, &b.a].into_iter().chain(b.v.iter()).map(nz).collect()
}

fn swap(t: &Table<(i32, i32)>) -> BTreeMap<(i32, i32), usize> {
    nz(t).into_iter().map(|((p, q), v)| ((q, p), v)).collect()
}

/// Replaces every block by g_target · d · g_source⁻¹.
fn conjugate(dc: &DoubleComplex, coeffs: &[i64]) -> DoubleComplex {
    let g: BTreeMap<(i32, i32), Matrix> = dc.dims().iter().map(|(&k, &n)| (k, unitriangular(n, coeffs))).collect();
    let mut out = DoubleComplex::with_dims(dc.dims().iter().map(|(&k, &n)| (k, n)));
    let tr = |m: &Matrix, from: (i32, i32), to: (i32, i32)| {
        g[&to].try_mul(m).unwrap().try_mul(&g[&from].inverse().unwrap()).unwrap()
    };
    for (&(p, q), m) in dc.d1_blocks() {
        out.set_d1(p, q, tr(m, (p, q), (p + 1, q)));
    }
    for (&(p, q), m) in dc.d2_blocks() {
        out.set_d2(p, q, tr(m, (p, q), (p, q + 1)));
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!((&a + &b) * &c, &a * &c + &b * &c);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a - &b) + &b, a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
        prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
    }

    #[test]
    fn scalar_text_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in matrix(6)) {
        let k = kernel(&m);
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        prop_assert_eq!(m.rank(), m.transpose().rank());
        for v in k.basis().row_vecs() {
            prop_assert!(m.apply(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn product_transpose(a in matrix(4), b in matrix(4)) {
        let b = Matrix::from_vec(a.cols(), b.cols(), (0..a.cols() * b.cols()).map(|i| b.entries()[i % b.entries().len()].clone()).collect());
        prop_assert_eq!(a.try_mul(&b).unwrap().transpose(), b.transpose().try_mul(&a.transpose()).unwrap());
    }

    #[test]
    fn subspace_dimension_formula(a in matrix(5), b in matrix(5)) {
        let n = a.cols().min(b.cols());
        let u = Subspace::span(n, &a.submatrix(0..a.rows(), 0..n));
        let v = Subspace::span(n, &b.submatrix(0..b.rows(), 0..n));
        let s = sum(&u, &v).unwrap();
        let i = intersect(&u, &v).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
        prop_assert!(s.contains(&u).unwrap() && u.contains(&i).unwrap() && v.contains(&i).unwrap());
    }

    #[test]
    fn generated_cases_satisfy_every_property(seed in any::<u64>()) {
        let g = random_bicomplex(seed, &ShapeParams::mixed());
        let f = check_generated(&g).unwrap();
        prop_assert!(f.is_empty(), "{:?}", f);
    }

    #[test]
    fn total_cohomology_sign_independent(seed in any::<u64>()) {
        let g = random_bicomplex(seed, &ShapeParams::mixed());
        let r = frolicher_report(&g.complex).unwrap();
        prop_assert_eq!(nz(&r.tot_plus), nz(&r.tot_minus));
    }

    #[test]
    fn transpose_swaps_flavors(seed in any::<u64>()) {
        let dc = random_bicomplex(seed, &ShapeParams::mixed()).complex;
        let r = frolicher_report(&dc).unwrap().bigraded;
        let t = frolicher_report(&dc.transpose()).unwrap().bigraded;
        prop_assert_eq!(nz(&t.d1), swap(&r.d2));
        prop_assert_eq!(nz(&t.d2), swap(&r.d1));
        prop_assert_eq!(nz(&t.bc), swap(&r.bc));
        prop_assert_eq!(nz(&t.a), swap(&r.a));
    }

    #[test]
    fn basis_change_invariance(seed in any::<u64>(), coeffs in proptest::collection::vec(-3i64..=3, 1..6)) {
        let dc = random_bicomplex(seed, &ShapeParams::mixed()).complex;
        let conj = conjugate(&dc, &coeffs).validated().unwrap();
        let (a, b) = (frolicher_report(&dc).unwrap(), frolicher_report(&conj).unwrap());
        prop_assert_eq!(tables(&a), tables(&b));
        prop_assert_eq!(a.lemma.holds, b.lemma.holds);
    }

    #[test]
    fn direct_sum_is_additive(s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = ShapeParams::parse_counts("dot:0-1,hseg:0-1,vseg:0-1,square:0-1,zigzag3:0-1", 2).unwrap();
        let (x, y) = (random_bicomplex(s1, &p).complex, random_bicomplex(s2, &p).complex);
        let (rx, ry) = (frolicher_report(&x).unwrap(), frolicher_report(&y).unwrap());
        let rs = frolicher_report(&x.direct_sum(&y)).unwrap();
        for ((tx, ty), ts) in tables(&rx).into_iter().zip(tables(&ry)).zip(tables(&rs)) {
            let mut want = tx;
            for (k, v) in ty {
                *want.entry(k).or_default() += v;
            }
            prop_assert_eq!(ts, want);
        }
        prop_assert_eq!(rs.lemma.holds, rx.lemma.holds && ry.lemma.holds);
    }
}

use cohomlab::cohomology::{flavor_tables, lemma_verdict, tot_cohomology, Table};
use cohomlab::complexes::Sign;
use cohomlab::geometry::{builtins, complex_bicomplex, symplectic_pair, symplectic_report, type_n_view};
use cohomlab::spectral::{degenerates_at, page_at, Which};

fn vals(t: &Table<i32>) -> Vec<usize> {
    t.values().copied().collect()
}

#[test]
fn symplectic_iwasawa_tables() {
    let sp = symplectic_pair(&builtins::iwasawa_real(), &builtins::iwasawa_omega()).unwrap();
    let r = symplectic_report(&sp).unwrap();
    assert!(r.operators.all(), "{:?}", r.operators);
    assert_eq!(vals(&r.tables.d1), vec![1, 4, 8, 10, 8, 4, 1]);
    assert_eq!(vals(&r.tables.d2), vec![1, 4, 8, 10, 8, 4, 1]);
    // closed 2-forms are dᴧ-closed and ddᴧ vanishes on ∧², so BC² = dim Z² = 10
    assert_eq!(vals(&r.tables.bc), vec![1, 4, 10, 11, 10, 4, 1]);
    assert_eq!(vals(&r.tables.a), vec![1, 4, 10, 11, 10, 4, 1]);
    assert_eq!(r.slack.values().copied().collect::<Vec<_>>(), vec![0, 0, 4, 2, 4, 0, 0]);
    assert!(!r.hard_lefschetz.holds);
    assert!(r.star_duality);
    assert!(r.slack_consistent_with_hlc);
}

#[test]
fn complex_iwasawa_type_n() {
    let dc = complex_bicomplex(&builtins::iwasawa_complex()).unwrap();
    let v = type_n_view(&dc).unwrap();
    assert_eq!(v.range(), Some((-3, 3)));
    for t in [&v.d1, &v.d2, &v.bc, &v.a] {
        // k = 0: h^{0,0} + h^{1,1} + h^{2,2} + h^{3,3} = 1 + 6 + 6 + 1
        assert_eq!(vals(t), vec![1, 5, 11, 14, 11, 5, 1]);
    }
    assert!(v.inequality_holds);
    assert!(v.equality);
}

#[test]
fn complex_iwasawa_bigraded() {
    let dc = complex_bicomplex(&builtins::iwasawa_complex()).unwrap();
    let t = flavor_tables(&dc).unwrap();
    let betti: Vec<usize> = (0..=6).map(|n| tot_cohomology(&dc, Sign::Plus).unwrap().at(n)).collect();
    assert_eq!(betti, vec![1, 4, 8, 10, 8, 4, 1]);
    for p in 0..=3 {
        for q in 0..=3 {
            assert_eq!(t.bc.at((p, q)), t.a.at((3 - q, 3 - p)), "({p},{q})");
        }
    }
    let e1 = page_at(&dc, Which::First, 1).unwrap();
    assert_eq!(e1.dims.collapse(|(p, q)| p + q).at(1), 5);
    assert!(!degenerates_at(&dc, Which::First, 1).unwrap());
    assert!(!lemma_verdict(&dc).unwrap().holds);
}

use flagorbit_bench::{classify, generic_e};

#[test]
fn fixtures_are_generic_e_components() {
    for (m, r) in [(4, 2), (6, 3), (10, 5)] {
        let rec = classify(&generic_e(m, r)).unwrap();
        assert_eq!(rec.components.len(), 1);
        let c = &rec.components[0];
        assert!(c.generic);
        assert_eq!((c.rank, c.indices.len()), (r, m));
        assert_eq!(c.q.as_ref().unwrap().len(), m - r - 1);
    }
}

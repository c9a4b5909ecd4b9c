//! Benchmark fixtures.

pub use flagorbit_core::{
    build_representative, classify, Configuration, Field, KBlock, Moduli, PType, ProjectivePoint,
};

/// The representative of the single (K, r)-block on `{1..m}` with rank `r`,
/// moduli `(1, h+2, (h+2)^2, ...)`.
pub fn generic_e(m: usize, r: usize) -> Configuration {
    let p = PType::new(vec![], vec![], vec![KBlock { indices: (1..=m).collect(), rank: r }]);
    let q: Moduli = vec![(0..m - r - 1)
        .map(|h| {
            let coords: Vec<i64> = (0..r as u32).map(|e| (h as i64 + 2).pow(e)).collect();
            ProjectivePoint::from_i64(Field::Rational, &coords).expect("nonzero")
        })
        .collect()];
    build_representative(Field::Rational, &p, &q, r).expect("valid stratum")
}

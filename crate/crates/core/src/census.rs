//! Brute-force orbit census over a prime field, reconciled against the
//! classification pipeline.
//!
//! Nothing here relies on the classification theory: orbits are computed by
//! applying every element of `GL(n, F_p)` to every configuration, and the
//! pipeline partition is compared to that ground truth membership by
//! membership.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::decompose::classify;
use crate::equivalence::equivalent;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Vector};
use crate::model::{Configuration, PType, ProjectivePoint};

pub const DEFAULT_BUDGET: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub n: usize,
    pub m: usize,
    pub q: u64,
    pub total_configurations: u64,
    pub brute_force_orbits: u64,
    /// Average number of fixed configurations over the group.
    pub burnside_orbits: u64,
    pub pipeline_orbits: u64,
    /// Pipeline classes per stratum, in canonical ptype order.
    pub per_ptype: Vec<(PType, u64)>,
    /// Brute-force and pipeline partitions coincide and the Burnside count matches.
    pub agreement: bool,
}

impl CensusReport {
    /// Number of classes in the fibre over `p`.
    pub fn fibre(&self, p: &PType) -> u64 {
        self.per_ptype
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, c)| *c)
    }
}

/// Normalized representatives of all points of the projective space `P^{n-1}(F_q)`.
pub fn projective_points(field: Field, n: usize) -> Vec<ProjectivePoint> {
    let q = field.order().expect("finite field");
    let total = q.pow(n as u32);
    let mut out = Vec::new();
    for code in 1..total {
        let mut c = code;
        let v: Vector = (0..n)
            .map(|_| {
                let x = field.from_i64((c % q) as i64);
                c /= q;
                x
            })
            .collect();
        let p = ProjectivePoint::new(v.clone()).expect("nonzero");
        if p.coords() == v.as_slice() {
            out.push(p);
        }
    }
    out
}

/// All of `GL(n, F_q)`, built row by row keeping only rows outside the span so far.
pub fn general_linear_group(field: Field, n: usize) -> Vec<Matrix> {
    let q = field.order().expect("finite field");
    let vectors: Vec<Vector> = (0..q.pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let x = field.from_i64((c % q) as i64);
                    c /= q;
                    x
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut rows: Vec<Vector> = Vec::new();
    fn rec(field: Field, n: usize, vectors: &[Vector], rows: &mut Vec<Vector>, out: &mut Vec<Matrix>) {
        if rows.len() == n {
            out.push(Matrix::from_rows(field, rows.clone()).expect("square"));
            return;
        }
        for v in vectors {
            rows.push(v.clone());
            let rank = Matrix::from_rows(field, rows.clone()).expect("nonempty").rank();
            if rank == rows.len() {
                rec(field, n, vectors, rows, out);
            }
            rows.pop();
        }
    }
    rec(field, n, &vectors, &mut rows, &mut out);
    out
}

fn gl_order(q: u128, n: u32) -> u128 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

pub fn run_census(n: usize, m: usize, q: u64) -> Result<CensusReport> {
    run_census_with_budget(n, m, q, DEFAULT_BUDGET)
}

pub fn run_census_with_budget(n: usize, m: usize, q: u64, budget: u128) -> Result<CensusReport> {
    let field = Field::prime(q)?;
    if n == 0 || m == 0 {
        return Err(Error::InvalidConfiguration("n and m must be positive".into()));
    }
    let qq = q as u128;
    let npoints = (qq.pow(n as u32) - 1) / (qq - 1);
    let needed = gl_order(qq, n as u32)
        .saturating_mul(npoints.saturating_pow(m as u32))
        .saturating_mul((m * n * n) as u128);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let points = projective_points(field, n);
    let index: HashMap<&ProjectivePoint, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let group = general_linear_group(field, n);
    let actions: Vec<Vec<usize>> = group
        .iter()
        .map(|g| {
            points
                .iter()
                .map(|p| index[&p.apply(g).expect("g is invertible")])
                .collect()
        })
        .collect();

    let np = points.len();
    let total = np.pow(m as u32);
    let decode = |mut code: usize| -> Vec<usize> {
        (0..m)
            .map(|_| {
                let i = code % np;
                code /= np;
                i
            })
            .collect()
    };
    let encode = |idx: &[usize]| -> usize { idx.iter().rev().fold(0, |acc, &i| acc * np + i) };

    // brute force: grow each orbit from its smallest unvisited member
    let mut orbit_of = vec![usize::MAX; total];
    let mut brute_orbits = 0usize;
    for seed in 0..total {
        if orbit_of[seed] != usize::MAX {
            continue;
        }
        let tuple = decode(seed);
        for act in &actions {
            let image: Vec<usize> = tuple.iter().map(|&i| act[i]).collect();
            orbit_of[encode(&image)] = brute_orbits;
        }
        brute_orbits += 1;
    }

    // Burnside: the orbit count equals the average number of fixed configurations
    let fixed_sum: u128 = actions
        .iter()
        .map(|act| {
            let fixed = act.iter().enumerate().filter(|(i, &j)| *i == j).count() as u128;
            fixed.pow(m as u32)
        })
        .sum();
    let burnside_exact = fixed_sum.is_multiple_of(group.len() as u128);
    let burnside = (fixed_sum / group.len() as u128) as u64;

    // pipeline
    let configs: Vec<Configuration> = (0..total)
        .map(|code| {
            let lines = decode(code).into_iter().map(|i| points[i].clone()).collect();
            Configuration::new(field, n, lines).expect("valid configuration")
        })
        .collect();
    let records = configs
        .par_iter()
        .map(classify)
        .collect::<Result<Vec<_>>>()?;

    type Key = (PType, Vec<Option<Vec<ProjectivePoint>>>);
    let mut buckets: HashMap<Key, Vec<(usize, usize)>> = HashMap::new();
    let mut class_of = vec![usize::MAX; total];
    let mut class_ptype: Vec<PType> = Vec::new();
    for (code, rec) in records.iter().enumerate() {
        let key: Key = (rec.ptype.clone(), rec.components.iter().map(|c| c.q.clone()).collect());
        let generic = rec.is_generic();
        let reps = buckets.entry(key).or_default();
        let found = if generic {
            reps.first().map(|&(_, class)| class)
        } else {
            let mut hit = None;
            for &(rep, class) in reps.iter() {
                if equivalent(&configs[rep], &configs[code])?.equivalent {
                    hit = Some(class);
                    break;
                }
            }
            hit
        };
        class_of[code] = match found {
            Some(c) => c,
            None => {
                let c = class_ptype.len();
                class_ptype.push(rec.ptype.clone());
                reps.push((code, c));
                c
            }
        };
    }
    let pipeline_orbits = class_ptype.len();

    let mut b2p = vec![usize::MAX; brute_orbits];
    let mut p2b = vec![usize::MAX; pipeline_orbits];
    let mut same_partition = true;
    for code in 0..total {
        let (b, p) = (orbit_of[code], class_of[code]);
        if b2p[b] == usize::MAX && p2b[p] == usize::MAX {
            b2p[b] = p;
            p2b[p] = b;
        } else if b2p[b] != p || p2b[p] != b {
            same_partition = false;
            break;
        }
    }

    let mut per: BTreeMap<PType, u64> = BTreeMap::new();
    for p in class_ptype {
        *per.entry(p).or_default() += 1;
    }

    Ok(CensusReport {
        n,
        m,
        q,
        total_configurations: total as u64,
        brute_force_orbits: brute_orbits as u64,
        burnside_orbits: burnside,
        pipeline_orbits: pipeline_orbits as u64,
        per_ptype: per.into_iter().collect(),
        agreement: same_partition
            && burnside_exact
            && brute_orbits == pipeline_orbits
            && burnside == brute_orbits as u64,
    })
}

/// Number of pipeline classes over `p` among all configurations over `F_q`.
pub fn fibre_census(p: &PType, n: usize, q: u64) -> Result<u64> {
    let report = run_census(n, p.m(), q)?;
    Ok(report.fibre(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::KBlock;

    #[test]
    fn point_and_group_counts() {
        let f2 = Field::prime(2).unwrap();
        let f3 = Field::prime(3).unwrap();
        assert_eq!(projective_points(f2, 2).len(), 3);
        assert_eq!(projective_points(f3, 2).len(), 4);
        assert_eq!(projective_points(f2, 3).len(), 7);
        assert_eq!(general_linear_group(f2, 2).len(), 6);
        assert_eq!(general_linear_group(f3, 2).len(), 48);
        assert_eq!(general_linear_group(f2, 3).len(), 168);
    }

    #[test]
    fn census_2_3_2() {
        let r = run_census(2, 3, 2).unwrap();
        assert_eq!(r.total_configurations, 27);
        assert_eq!(r.brute_force_orbits, 5);
        assert!(r.agreement);
    }

    #[test]
    fn census_2_4() {
        let r = run_census(2, 4, 2).unwrap();
        assert_eq!((r.total_configurations, r.brute_force_orbits), (81, 14));
        assert!(r.agreement);
        let r3 = run_census(2, 4, 3).unwrap();
        assert_eq!((r3.total_configurations, r3.brute_force_orbits), (256, 15));
        assert!(r3.agreement);
        // orbit count q + 12
        assert_eq!(r.brute_force_orbits, 2 + 12);
        assert_eq!(r3.brute_force_orbits, 3 + 12);
    }

    #[test]
    fn fibres() {
        let p_g = PType::new(vec![], vec![], vec![KBlock { indices: vec![1, 2, 3, 4], rank: 2 }]);
        assert_eq!(fibre_census(&p_g, 2, 2).unwrap(), 6);
        assert_eq!(fibre_census(&p_g, 2, 3).unwrap(), 7);
        let p_c = PType::new(vec![vec![1, 2, 3]], vec![], vec![]);
        assert_eq!(fibre_census(&p_c, 2, 2).unwrap(), 1);
        let p_o = PType::new(vec![], vec![vec![1, 2, 3]], vec![]);
        assert_eq!(fibre_census(&p_o, 2, 3).unwrap(), 1);
    }

    #[test]
    fn singleton_fibres_without_moduli() {
        for (n, m, q) in [(2, 3, 2), (2, 4, 2), (3, 3, 2), (3, 4, 2)] {
            let r = run_census(n, m, q).unwrap();
            assert!(r.agreement, "({n},{m},{q})");
            for (p, c) in &r.per_ptype {
                if p.k_blocks().is_empty() {
                    assert_eq!(*c, 1, "{p:?}");
                }
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(run_census(2, 3, 4), Err(Error::NotPrime(4)));
        assert!(matches!(
            run_census_with_budget(2, 4, 3, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}

//! The finite set of strata labels for (n, m): validation, enumeration, the
//! rank `r(p)`, indecomposable dimension vectors and multiplicity vectors.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{DimensionVector, KBlock, PType};

/// `A + Σ(|J_b| - 1) + Σ r_c`.
pub fn r_of(p: &PType) -> usize {
    p.i_blocks().len()
        + p.j_blocks().iter().map(|j| j.len() - 1).sum::<usize>()
        + p.k_blocks().iter().map(|k| k.rank).sum::<usize>()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// The blocks do not partition `{1..m}`.
    Partition(String),
    /// A block violates its family's size bound.
    BlockSize(String),
    /// `r(p)` exceeds the ambient dimension.
    RankBound { r: usize, n: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Partition(s) => write!(f, "not a partition: {s}"),
            Violation::BlockSize(s) => write!(f, "block size: {s}"),
            Violation::RankBound { r, n } => write!(f, "r(p) = {r} exceeds n = {n}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

pub fn validate(p: &PType, n: usize, m: usize) -> ValidationReport {
    let mut violations = Vec::new();

    let mut seen = vec![false; m + 1];
    let all = p
        .i_blocks()
        .iter()
        .chain(p.j_blocks())
        .chain(p.k_blocks().iter().map(|k| &k.indices));
    for block in all {
        for &i in block {
            if i == 0 || i > m {
                violations.push(Violation::Partition(format!("index {i} outside 1..={m}")));
            } else if seen[i] {
                violations.push(Violation::Partition(format!("index {i} appears twice")));
            } else {
                seen[i] = true;
            }
        }
    }
    let missing: Vec<usize> = (1..=m).filter(|&i| !seen[i]).collect();
    if !missing.is_empty() {
        violations.push(Violation::Partition(format!("indices {missing:?} are not covered")));
    }

    for i in p.i_blocks() {
        if i.is_empty() {
            violations.push(Violation::BlockSize("empty I-block".into()));
        }
    }
    for j in p.j_blocks() {
        if j.len() < 3 {
            violations.push(Violation::BlockSize(format!("J-block {j:?} has fewer than 3 indices")));
        }
    }
    for k in p.k_blocks() {
        if k.rank < 2 || k.rank + 2 > k.indices.len() {
            violations.push(Violation::BlockSize(format!(
                "K-block {:?} with rank {} violates 4 <= r+2 <= #K",
                k.indices, k.rank
            )));
        }
    }

    // r_of would underflow on an empty J-block; those were reported above.
    if p.j_blocks().iter().all(|j| !j.is_empty()) {
        let r = r_of(p);
        if r > n {
            violations.push(Violation::RankBound { r, n });
        }
    }
    ValidationReport { violations }
}

/// Set partitions of `{1..m}` with at most `max_blocks` blocks, as restricted growth strings.
fn set_partitions(m: usize, max_blocks: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        pos: usize,
        m: usize,
        max_blocks: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if pos > m {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(pos);
            rec(pos + 1, m, max_blocks, blocks, out);
            blocks[b].pop();
        }
        if blocks.len() < max_blocks {
            blocks.push(vec![pos]);
            rec(pos + 1, m, max_blocks, blocks, out);
            blocks.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, m, max_blocks, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Copy)]
enum Family {
    I,
    J,
    K(usize),
}

impl Family {
    fn rank(self, size: usize) -> usize {
        match self {
            Family::I => 1,
            Family::J => size - 1,
            Family::K(r) => r,
        }
    }
}

fn families(size: usize) -> Vec<Family> {
    let mut out = vec![Family::I];
    if size >= 3 {
        out.push(Family::J);
    }
    out.extend((2..=size.saturating_sub(2)).map(Family::K));
    out
}

fn assign(blocks: &[Vec<usize>], n: usize) -> Vec<PType> {
    fn rec(
        blocks: &[Vec<usize>],
        idx: usize,
        budget: usize,
        chosen: &mut Vec<Family>,
        out: &mut Vec<PType>,
    ) {
        if idx == blocks.len() {
            let (mut i, mut j, mut k) = (Vec::new(), Vec::new(), Vec::new());
            for (b, fam) in blocks.iter().zip(chosen.iter()) {
                match fam {
                    Family::I => i.push(b.clone()),
                    Family::J => j.push(b.clone()),
                    Family::K(r) => k.push(KBlock { indices: b.clone(), rank: *r }),
                }
            }
            out.push(PType::new(i, j, k));
            return;
        }
        // every later block consumes at least rank 1
        let reserve = blocks.len() - idx - 1;
        for fam in families(blocks[idx].len()) {
            let r = fam.rank(blocks[idx].len());
            if r + reserve > budget {
                continue;
            }
            chosen.push(fam);
            rec(blocks, idx + 1, budget - r, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    rec(blocks, 0, n, &mut Vec::new(), &mut out);
    out
}

/// Every valid ptype for (n, m), in canonical order.
pub fn enumerate(n: usize, m: usize) -> Vec<PType> {
    let partitions = set_partitions(m, n);
    let mut out: Vec<PType> = partitions.par_iter().flat_map_iter(|b| assign(b, n)).collect();
    out.par_sort_unstable();
    debug_assert!(out.windows(2).all(|w| w[0] != w[1]));
    out
}

/// Whether `d(K, r)` admits an indecomposable configuration: `r = 1`, or
/// `r = |K| - 1 >= 2`, or `2 <= r <= |K| - 2`.
pub fn is_indecomposable_dimvec(d: &DimensionVector) -> bool {
    let r = d.rank();
    let k = d.support().len();
    d.is_line_pattern() && (r == 1 || (r >= 2 && r + 1 == k) || (r >= 2 && r + 2 <= k))
}

/// Multiplicities of indecomposable dimension vectors summing to `(n; 1, ..., 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    n: usize,
    m: usize,
    counts: BTreeMap<DimensionVector, usize>,
}

impl MultiplicityVector {
    pub fn new(n: usize, m: usize, counts: BTreeMap<DimensionVector, usize>) -> Result<MultiplicityVector> {
        let mut total = DimensionVector::new(0, vec![0; m])?;
        for (d, &c) in &counts {
            if d.m() != m {
                return Err(Error::NotRealizable(format!("key {d:?} has length {}, expected {m}", d.m())));
            }
            if c == 0 {
                return Err(Error::NotRealizable(format!("zero count for {d:?}")));
            }
            if !is_indecomposable_dimvec(d) {
                return Err(Error::NotRealizable(format!("{d:?} is not indecomposable")));
            }
            for _ in 0..c {
                total = &total + d;
            }
        }
        let target = DimensionVector::d_kr(&(1..=m).collect::<Vec<_>>(), n, m);
        if total != target {
            return Err(Error::NotRealizable(format!("sum is {total:?}, expected {target:?}")));
        }
        Ok(MultiplicityVector { n, m, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn counts(&self) -> &BTreeMap<DimensionVector, usize> {
        &self.counts
    }
}

pub fn to_multiplicity_vector(p: &PType, n: usize) -> Result<MultiplicityVector> {
    let m = p.m();
    let report = validate(p, n, m);
    if !report.is_valid() {
        return Err(Error::InvalidPType(report.to_string()));
    }
    let mut counts = BTreeMap::new();
    let free = n - r_of(p);
    if free > 0 {
        counts.insert(DimensionVector::d_kr(&[], 1, m), free);
    }
    for i in p.i_blocks() {
        counts.insert(DimensionVector::d_kr(i, 1, m), 1);
    }
    for j in p.j_blocks() {
        counts.insert(DimensionVector::d_kr(j, j.len() - 1, m), 1);
    }
    for k in p.k_blocks() {
        counts.insert(DimensionVector::d_kr(&k.indices, k.rank, m), 1);
    }
    MultiplicityVector::new(n, m, counts)
}

pub fn from_multiplicity_vector(mv: &MultiplicityVector) -> Result<PType> {
    let (mut i, mut j, mut k) = (Vec::new(), Vec::new(), Vec::new());
    for (d, &c) in &mv.counts {
        let support = d.support();
        if support.is_empty() {
            // free summands; their count is implied by the rest
            continue;
        }
        if c > 1 {
            return Err(Error::NotRealizable(format!("{d:?} repeated {c} times")));
        }
        let r = d.rank();
        if r == 1 {
            i.push(support);
        } else if r + 1 == support.len() {
            j.push(support);
        } else {
            k.push(KBlock { indices: support, rank: r });
        }
    }
    Ok(PType::new(i, j, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p_g() -> PType {
        PType::new(vec![], vec![], vec![KBlock { indices: vec![1, 2, 3, 4], rank: 2 }])
    }

    fn p_c3() -> PType {
        PType::new(vec![vec![1, 2, 3]], vec![], vec![])
    }

    fn p_o3() -> PType {
        PType::new(vec![], vec![vec![1, 2, 3]], vec![])
    }

    #[test]
    fn r_values() {
        assert_eq!(r_of(&p_g()), 2);
        assert_eq!(r_of(&p_c3()), 1);
        assert_eq!(r_of(&p_o3()), 2);
    }

    #[test]
    fn validation() {
        assert!(validate(&p_g(), 2, 4).is_valid());
        let r = validate(&p_o3(), 2, 4);
        assert!(matches!(r.violations.as_slice(), [Violation::Partition(_)]));
        let r = validate(&PType::new(vec![vec![4]], vec![vec![1, 2, 3]], vec![]), 2, 4);
        assert_eq!(r.violations, vec![Violation::RankBound { r: 3, n: 2 }]);
        let r = validate(&PType::new(vec![], vec![vec![1, 2]], vec![]), 2, 2);
        assert!(matches!(r.violations.as_slice(), [Violation::BlockSize(_)]));
        let r = validate(&PType::new(vec![vec![1, 1]], vec![], vec![]), 2, 1);
        assert!(!r.is_valid());
    }

    #[test]
    fn enumerate_2_3() {
        let all = enumerate(2, 3);
        let expected = vec![
            p_c3(),
            PType::new(vec![vec![1], vec![2, 3]], vec![], vec![]),
            PType::new(vec![vec![2], vec![1, 3]], vec![], vec![]),
            PType::new(vec![vec![3], vec![1, 2]], vec![], vec![]),
            p_o3(),
        ];
        assert_eq!(all.len(), 5);
        for p in &expected {
            assert!(all.contains(p), "{p:?} missing");
        }
    }

    #[test]
    fn enumerate_2_4_and_small_cases() {
        let all = enumerate(2, 4);
        assert_eq!(all.len(), 9);
        assert!(all.contains(&p_g()));
        assert_eq!(all.iter().filter(|p| p.i_blocks().len() == 2).count(), 7);
        for n in 1..5 {
            assert_eq!(enumerate(n, 1), vec![PType::new(vec![vec![1]], vec![], vec![])]);
        }
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        for n in 1..=5 {
            for m in 1..=6 {
                let all = enumerate(n, m);
                assert!(all.windows(2).all(|w| w[0] < w[1]));
                for p in &all {
                    assert!(validate(p, n, m).is_valid(), "{p:?}");
                }
            }
        }
    }

    #[test]
    fn enumeration_matches_filtered_brute_force() {
        // Independent route: every assignment without pruning, filtered by validate.
        for n in 1..=4 {
            for m in 1..=6 {
                let mut brute: Vec<PType> = set_partitions(m, m)
                    .iter()
                    .flat_map(|b| assign(b, usize::MAX / 2))
                    .filter(|p| validate(p, n, m).is_valid())
                    .collect();
                brute.sort();
                assert_eq!(brute, enumerate(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn indecomposable_dimvecs() {
        assert!(is_indecomposable_dimvec(&DimensionVector::d_kr(&[1, 2, 3], 2, 3)));
        assert!(is_indecomposable_dimvec(&DimensionVector::d_kr(&[], 1, 3)));
        assert!(!is_indecomposable_dimvec(&DimensionVector::d_kr(&[1, 2], 2, 3)));
        assert!(is_indecomposable_dimvec(&DimensionVector::d_kr(&[1, 2, 3, 4], 2, 4)));
        assert!(!is_indecomposable_dimvec(&DimensionVector::d_kr(&[1, 2, 3], 3, 3)));
        assert!(!is_indecomposable_dimvec(&DimensionVector::d_kr(&[], 0, 3)));
    }

    #[test]
    fn multiplicity_examples() {
        let mv = to_multiplicity_vector(&p_c3(), 2).unwrap();
        let expected: BTreeMap<_, _> = [
            (DimensionVector::d_kr(&[], 1, 3), 1),
            (DimensionVector::d_kr(&[1, 2, 3], 1, 3), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(mv.counts(), &expected);

        let mv = to_multiplicity_vector(&p_o3(), 2).unwrap();
        assert_eq!(mv.counts().len(), 1);
        assert_eq!(mv.counts()[&DimensionVector::d_kr(&[1, 2, 3], 2, 3)], 1);
    }

    #[test]
    fn multiplicity_round_trip() {
        for n in 1..=6 {
            for m in 1..=6 {
                for p in enumerate(n, m) {
                    let mv = to_multiplicity_vector(&p, n).unwrap();
                    assert!(mv.counts().keys().all(is_indecomposable_dimvec));
                    assert_eq!(from_multiplicity_vector(&mv).unwrap(), p);
                }
            }
        }
    }

    #[test]
    fn multiplicity_rejects_repeats_and_bad_sums() {
        let d = DimensionVector::d_kr(&[1], 1, 1);
        let counts: BTreeMap<_, _> = [(d, 2)].into_iter().collect();
        assert!(matches!(MultiplicityVector::new(2, 1, counts), Err(Error::NotRealizable(_))));
        let counts: BTreeMap<_, _> = [(DimensionVector::d_kr(&[1, 2], 2, 2), 1)].into_iter().collect();
        assert!(matches!(MultiplicityVector::new(2, 2, counts), Err(Error::NotRealizable(_))));
    }

    #[test]
    fn finiteness_shadow() {
        for n in 1..=6 {
            assert!(enumerate(n, 3).iter().all(|p| p.k_blocks().is_empty()));
        }
        for n in 2..=5 {
            for m in 4..=7 {
                assert!(enumerate(n, m).iter().any(|p| !p.k_blocks().is_empty()));
            }
        }
    }
}

//! Numerical invariants of dimension vectors and strata: Tits form, orbit
//! dimension, stabilizer block profile, and the open-orbit and finite-type
//! criteria.

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, Matrix};
use crate::model::{Configuration, DimensionVector, KBlock, PType};
use crate::ptype::{self, r_of, validate};

/// `dim GL(V) - dim Fl_d(V)` with `Fl_d(V)` the product of Grassmannians `Gr(d_i, V)`.
pub fn tits_form_definitional(d: &DimensionVector) -> i64 {
    let r = d.rank() as i64;
    let flags: i64 = d.entries().iter().map(|&di| di as i64 * (r - di as i64)).sum();
    r * r - flags
}

/// `(2 - m)/2 |d|^2 + ||d||^2 / 2`, where `||d||^2` sums `d_i^2 + (|d| - d_i)^2`.
pub fn tits_form_closed(d: &DimensionVector) -> i64 {
    let r = d.rank() as i64;
    let m = d.m() as i64;
    let norm: i64 = d
        .entries()
        .iter()
        .map(|&di| {
            let di = di as i64;
            di * di + (r - di) * (r - di)
        })
        .sum();
    let twice = (2 - m) * r * r + norm;
    debug_assert_eq!(twice % 2, 0);
    twice / 2
}

pub fn tits_form(d: &DimensionVector) -> i64 {
    let q = tits_form_definitional(d);
    debug_assert_eq!(q, tits_form_closed(d));
    q
}

/// `Q(d(K, r)) = (r - 1)(r - |K| + 1) + 1`.
pub fn tits_form_dkr(indices: &[usize], rank: usize) -> i64 {
    let r = rank as i64;
    let k = indices.len() as i64;
    let q = (r - 1) * (r - k + 1) + 1;
    if cfg!(debug_assertions) {
        let m = indices.iter().copied().max().unwrap_or(0);
        debug_assert_eq!(q, tits_form(&DimensionVector::d_kr(indices, rank, m)));
    }
    q
}

fn require_valid(p: &PType, n: usize) -> Result<()> {
    let report = validate(p, n, p.m());
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidPType(report.to_string()))
    }
}

/// `n·r(p) - A - B - C`.
pub fn orbit_dimension(p: &PType, n: usize) -> Result<usize> {
    require_valid(p, n)?;
    let blocks = p.i_blocks().len() + p.j_blocks().len() + p.k_blocks().len();
    Ok(n * r_of(p) - blocks)
}

/// Dimension of `{g ∈ Mat_n : g v_i ∈ K v_i for all i}`.
///
/// Each line contributes the conditions `φ(g v_i) = 0` for a basis of
/// functionals `φ` vanishing on `v_i`.
pub fn endomorphism_dim(config: &Configuration) -> usize {
    let field = config.field();
    let n = config.n();
    let mut rows = Vec::new();
    for line in config.lines() {
        let v = line.coords();
        let row_v = Matrix::from_rows(field, vec![v.to_vec()]).expect("nonempty");
        for phi in kernel_basis(&row_v) {
            let mut row = vec![field.zero(); n * n];
            for a in 0..n {
                if phi[a].is_zero() {
                    continue;
                }
                for b in 0..n {
                    row[a * n + b] = &phi[a] * &v[b];
                }
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return n * n;
    }
    let system = Matrix::from_rows(field, rows).expect("nonempty");
    n * n - system.rank()
}

/// The block profile of the stabilizer of a representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerShape {
    /// Number of free diagonal scalars (one per I-block).
    pub diagonal: usize,
    /// Scalar block size `|J_b| - 1` for each J-block.
    pub j_blocks: Vec<usize>,
    /// Scalar block size `r_c` for each K-block.
    pub k_blocks: Vec<usize>,
    /// Size `n - r(p)` of the unconstrained complement.
    pub free: usize,
    /// `n^2 - dim O`.
    pub dimension: usize,
}

pub fn stabilizer_shape(p: &PType, n: usize) -> Result<StabilizerShape> {
    let dim_o = orbit_dimension(p, n)?;
    Ok(StabilizerShape {
        diagonal: p.i_blocks().len(),
        j_blocks: p.j_blocks().iter().map(|j| j.len() - 1).collect(),
        k_blocks: p.k_blocks().iter().map(|k| k.rank).collect(),
        free: n - r_of(p),
        dimension: n * n - dim_o,
    })
}

/// Whether an open orbit exists, and the stratum of that orbit.
pub fn has_open_orbit(n: usize, m: usize) -> (bool, Option<PType>) {
    let witness = if n >= m {
        Some(PType::new((1..=m).map(|j| vec![j]).collect(), vec![], vec![]))
    } else if n + 1 == m {
        Some(PType::new(vec![], vec![(1..=m).collect()], vec![]))
    } else {
        None
    };
    if let Some(p) = &witness {
        let dim = orbit_dimension(p, n).expect("witness is valid");
        assert_eq!(dim, m * (n - 1), "open-orbit witness must have full dimension");
    }
    (witness.is_some(), witness)
}

/// Whether there are finitely many orbits.
pub fn is_finite_type(n: usize, m: usize) -> bool {
    let finite = m <= 3;
    if cfg!(debug_assertions) && m <= 8 {
        let no_moduli = ptype::enumerate(n, m).iter().all(|p| p.k_blocks().is_empty());
        debug_assert_eq!(finite, no_moduli);
    }
    finite
}

/// Every (K, r) block an ambient (n, m) admits, used by exhaustive checks.
pub fn dkr_grid(n: usize, m: usize) -> impl Iterator<Item = KBlock> {
    (0u32..(1 << m)).flat_map(move |mask| {
        let indices: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        (1..=n).map(move |rank| KBlock { indices: indices.clone(), rank })
    })
}

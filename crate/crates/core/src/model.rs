//! Configurations of lines, tuple flags, dimension vectors and strata labels,
//! together with the explicit representative builders.
//!
//! Indices of lines are 1-based throughout the public data model.

use std::ops::Add;

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::linalg::{Matrix, Vector};
use crate::ptype;

/// A line through the origin, stored by its representative whose first
/// nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vector,
}

impl ProjectivePoint {
    pub fn new(coords: Vector) -> Result<ProjectivePoint> {
        let Some(lead) = coords.iter().find(|x| !x.is_zero()) else {
            return Err(Error::ZeroVector);
        };
        let field = lead.field();
        if coords.iter().any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let inv = lead.inv().expect("lead is nonzero");
        let coords = coords.iter().map(|x| x * &inv).collect();
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(coords.iter().map(|&v| field.from_i64(v)).collect())
    }

    /// The i-th standard basis vector of an r-dimensional space (0-based `i`).
    pub fn basis(field: Field, r: usize, i: usize) -> ProjectivePoint {
        let mut v = vec![field.zero(); r];
        v[i] = field.one();
        ProjectivePoint { coords: v }
    }

    /// The sum of all standard basis vectors.
    pub fn all_ones(field: Field, r: usize) -> ProjectivePoint {
        ProjectivePoint { coords: vec![field.one(); r] }
    }

    pub fn coords(&self) -> &[FieldScalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// Image under a linear map; fails if the map sends the line to zero.
    pub fn apply(&self, t: &Matrix) -> Result<ProjectivePoint> {
        ProjectivePoint::new(t.mul_vec(&self.coords))
    }

    /// The point with its coordinates placed at `offset..offset+dim` of a `total`-dimensional space.
    fn embedded(&self, total: usize, offset: usize) -> ProjectivePoint {
        let field = self.field();
        let mut v = vec![field.zero(); total];
        v[offset..offset + self.dim()].clone_from_slice(&self.coords);
        ProjectivePoint { coords: v }
    }
}

/// m nonzero lines in an n-dimensional space over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    field: Field,
    n: usize,
    lines: Vec<ProjectivePoint>,
}

impl Configuration {
    pub fn new(field: Field, n: usize, lines: Vec<ProjectivePoint>) -> Result<Configuration> {
        if n == 0 {
            return Err(Error::InvalidConfiguration("ambient dimension must be at least 1".into()));
        }
        if lines.is_empty() {
            return Err(Error::InvalidConfiguration("at least one line is required".into()));
        }
        for l in &lines {
            if l.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: l.dim() });
            }
            if l.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(Configuration { field, n, lines })
    }

    /// Normalizes each spanning vector into a line.
    pub fn from_vectors(field: Field, n: usize, vectors: Vec<Vector>) -> Result<Configuration> {
        let lines = vectors
            .into_iter()
            .map(ProjectivePoint::new)
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(field, n, lines)
    }

    pub fn from_i64(field: Field, n: usize, vectors: &[&[i64]]) -> Result<Configuration> {
        Configuration::from_vectors(
            field,
            n,
            vectors
                .iter()
                .map(|v| v.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[ProjectivePoint] {
        &self.lines
    }

    /// The line at 1-based position `i`.
    pub fn line(&self, i: usize) -> &ProjectivePoint {
        &self.lines[i - 1]
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.lines.iter().map(|l| l.coords.clone()).collect()
    }

    /// `T · config` for an invertible `T`.
    pub fn apply(&self, t: &Matrix) -> Result<Configuration> {
        if t.rows() != self.n || t.cols() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix acting on dimension {}",
                t.rows(),
                t.cols(),
                self.n
            )));
        }
        if t.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let lines = self
            .lines
            .iter()
            .map(|l| l.apply(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Configuration { field: self.field, n: self.n, lines })
    }

    pub fn to_tuple_flag(&self) -> TupleFlag {
        TupleFlag {
            field: self.field,
            dim: self.n,
            entries: self.lines.iter().cloned().map(Some).collect(),
        }
    }
}

/// A space of dimension `dim` with m subspaces, each zero or a line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TupleFlag {
    field: Field,
    dim: usize,
    entries: Vec<Option<ProjectivePoint>>,
}

impl TupleFlag {
    pub fn new(field: Field, dim: usize, entries: Vec<Option<ProjectivePoint>>) -> Result<TupleFlag> {
        for p in entries.iter().flatten() {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
            }
            if p.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(TupleFlag { field, dim, entries })
    }

    /// The zero space with m zero subspaces; the identity for [`direct_sum`].
    pub fn trivial(field: Field, m: usize) -> TupleFlag {
        TupleFlag { field, dim: 0, entries: vec![None; m] }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Option<ProjectivePoint>] {
        &self.entries
    }

    /// Converts to a configuration; every entry must be a line.
    pub fn to_configuration(&self) -> Result<Configuration> {
        let lines = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| {
                e.clone().ok_or_else(|| {
                    Error::InvalidConfiguration(format!("position {} is the zero subspace", i + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(self.field, self.dim, lines)
    }
}

/// `(r; d_1, ..., d_m)` with each `d_i ≤ r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimensionVector {
    rank: usize,
    entries: Vec<usize>,
}

impl DimensionVector {
    pub fn new(rank: usize, entries: Vec<usize>) -> Result<DimensionVector> {
        if let Some(&d) = entries.iter().find(|&&d| d > rank) {
            return Err(Error::DimensionMismatch { expected: rank, found: d });
        }
        Ok(DimensionVector { rank, entries })
    }

    /// `d(K, r)`: rank r with entry 1 exactly at the (1-based) positions in K.
    pub fn d_kr(indices: &[usize], rank: usize, m: usize) -> DimensionVector {
        let mut entries = vec![0; m];
        for &i in indices {
            entries[i - 1] = 1;
        }
        DimensionVector { rank, entries }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    /// 1-based positions of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// True when every entry is 0 or 1, i.e. the vector is some `d(K, r)`.
    pub fn is_line_pattern(&self) -> bool {
        self.entries.iter().all(|&d| d <= 1)
    }
}

impl Add for &DimensionVector {
    type Output = DimensionVector;
    fn add(self, rhs: &DimensionVector) -> DimensionVector {
        assert_eq!(self.m(), rhs.m(), "dimension vectors of different lengths");
        DimensionVector {
            rank: self.rank + rhs.rank,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KBlock {
    pub indices: Vec<usize>,
    pub rank: usize,
}

/// A stratum label: I-blocks, J-blocks and (K, r)-blocks over `{1..m}`.
///
/// Stored canonically: each block sorted, each family sorted by minimum
/// element. The derived ordering compares (I, J, K) lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PType {
    i_blocks: Vec<Vec<usize>>,
    j_blocks: Vec<Vec<usize>>,
    k_blocks: Vec<KBlock>,
}

impl PType {
    pub fn new(
        mut i_blocks: Vec<Vec<usize>>,
        mut j_blocks: Vec<Vec<usize>>,
        mut k_blocks: Vec<KBlock>,
    ) -> PType {
        for b in i_blocks.iter_mut().chain(j_blocks.iter_mut()) {
            b.sort_unstable();
        }
        for k in k_blocks.iter_mut() {
            k.indices.sort_unstable();
        }
        let min = |b: &Vec<usize>| b.first().copied().unwrap_or(0);
        i_blocks.sort_by_key(min);
        j_blocks.sort_by_key(min);
        k_blocks.sort_by_key(|k| min(&k.indices));
        PType { i_blocks, j_blocks, k_blocks }
    }

    pub fn i_blocks(&self) -> &[Vec<usize>] {
        &self.i_blocks
    }

    pub fn j_blocks(&self) -> &[Vec<usize>] {
        &self.j_blocks
    }

    pub fn k_blocks(&self) -> &[KBlock] {
        &self.k_blocks
    }

    /// Total number of indices covered by the blocks.
    pub fn m(&self) -> usize {
        self.i_blocks.iter().map(Vec::len).sum::<usize>()
            + self.j_blocks.iter().map(Vec::len).sum::<usize>()
            + self.k_blocks.iter().map(|k| k.indices.len()).sum::<usize>()
    }

    /// Number of moduli points each K-block needs.
    pub fn moduli_shape(&self) -> Vec<(usize, usize)> {
        self.k_blocks
            .iter()
            .map(|k| (k.indices.len() - k.rank - 1, k.rank))
            .collect()
    }
}

/// Moduli for a ptype: for each K-block (canonical order), its sequence of points.
pub type Moduli = Vec<Vec<ProjectivePoint>>;

fn check_indices(indices: &[usize], m: usize) -> Result<()> {
    for &i in indices {
        if i == 0 || i > m {
            return Err(Error::IndexOutOfRange { index: i, m });
        }
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Format(format!("repeated index in {indices:?}")));
    }
    Ok(())
}

fn sorted(indices: &[usize]) -> Vec<usize> {
    let mut s = indices.to_vec();
    s.sort_unstable();
    s
}

/// `F(I)`: a one-dimensional space, the whole space at positions in I.
pub fn build_f(field: Field, indices: &[usize], m: usize) -> Result<TupleFlag> {
    check_indices(indices, m)?;
    let mut entries = vec![None; m];
    for &i in indices {
        entries[i - 1] = Some(ProjectivePoint::basis(field, 1, 0));
    }
    Ok(TupleFlag { field, dim: 1, entries })
}

/// `D(J)`: the standard frame of `K^{|J|-1}` placed at the positions of J.
pub fn build_d(field: Field, indices: &[usize], m: usize) -> Result<TupleFlag> {
    check_indices(indices, m)?;
    if indices.len() < 3 {
        return Err(Error::BlockTooSmall { size: indices.len() });
    }
    let j = sorted(indices);
    let r = j.len() - 1;
    let mut entries = vec![None; m];
    for (h, &pos) in j.iter().enumerate() {
        entries[pos - 1] = Some(if h < r {
            ProjectivePoint::basis(field, r, h)
        } else {
            ProjectivePoint::all_ones(field, r)
        });
    }
    Ok(TupleFlag { field, dim: r, entries })
}

/// `E(K, r, q)`: the standard frame of `K^r` at the first r+1 positions of K,
/// followed by the moduli points.
pub fn build_e(
    field: Field,
    indices: &[usize],
    rank: usize,
    q: &[ProjectivePoint],
    m: usize,
) -> Result<TupleFlag> {
    check_indices(indices, m)?;
    let k = sorted(indices);
    if rank < 2 || rank + 2 > k.len() {
        return Err(Error::RankOutOfRange { rank, size: k.len() });
    }
    let expected = k.len() - rank - 1;
    if q.len() != expected {
        return Err(Error::QLengthMismatch { expected, found: q.len() });
    }
    let mut entries = vec![None; m];
    for (h, &pos) in k.iter().enumerate() {
        let point = if h < rank {
            ProjectivePoint::basis(field, rank, h)
        } else if h == rank {
            ProjectivePoint::all_ones(field, rank)
        } else {
            let p = &q[h - rank - 1];
            if p.dim() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: p.dim() });
            }
            if p.field() != field {
                return Err(Error::FieldMismatch);
            }
            p.clone()
        };
        entries[pos - 1] = Some(point);
    }
    Ok(TupleFlag { field, dim: rank, entries })
}

/// Block-coordinate direct sum: F's basis first, then G's.
pub fn direct_sum(f: &TupleFlag, g: &TupleFlag) -> Result<TupleFlag> {
    if f.m() != g.m() {
        return Err(Error::ShapeMismatch(format!("{} vs {} positions", f.m(), g.m())));
    }
    if f.field != g.field {
        return Err(Error::FieldMismatch);
    }
    let total = f.dim + g.dim;
    let entries = f
        .entries
        .iter()
        .zip(&g.entries)
        .enumerate()
        .map(|(i, pair)| match pair {
            (Some(_), Some(_)) => Err(Error::OverlappingSupports { position: i + 1 }),
            (Some(a), None) => Ok(Some(a.embedded(total, 0))),
            (None, Some(b)) => Ok(Some(b.embedded(total, f.dim))),
            (None, None) => Ok(None),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TupleFlag { field: f.field, dim: total, entries })
}

pub fn dimension_vector(f: &TupleFlag) -> DimensionVector {
    DimensionVector {
        rank: f.dim,
        entries: f.entries.iter().map(|e| usize::from(e.is_some())).collect(),
    }
}

/// `F(p, q)`: free summands first, then I-, J- and K-block summands in canonical order.
pub fn build_representative(field: Field, p: &PType, q: &Moduli, n: usize) -> Result<Configuration> {
    let m = p.m();
    let report = ptype::validate(p, n, m);
    if !report.is_valid() {
        return Err(Error::InvalidPType(report.to_string()));
    }
    let shape = p.moduli_shape();
    if q.len() != shape.len() {
        return Err(Error::ModuliShapeMismatch(format!(
            "{} K-blocks but {} moduli sequences",
            shape.len(),
            q.len()
        )));
    }
    for (c, ((len, rank), pts)) in shape.iter().zip(q).enumerate() {
        if pts.len() != *len || pts.iter().any(|pt| pt.dim() != *rank) {
            return Err(Error::ModuliShapeMismatch(format!(
                "K-block {} needs {} points in dimension {}",
                c + 1,
                len,
                rank
            )));
        }
    }

    let mut acc = TupleFlag::trivial(field, m);
    for _ in 0..n - ptype::r_of(p) {
        acc = direct_sum(&acc, &build_f(field, &[], m)?)?;
    }
    for i in p.i_blocks() {
        acc = direct_sum(&acc, &build_f(field, i, m)?)?;
    }
    for j in p.j_blocks() {
        acc = direct_sum(&acc, &build_d(field, j, m)?)?;
    }
    for (k, pts) in p.k_blocks().iter().zip(q) {
        acc = direct_sum(&acc, &build_e(field, &k.indices, k.rank, pts, m)?)?;
    }
    debug_assert_eq!(acc.dim(), n);
    acc.to_configuration()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn pt(c: &[i64]) -> ProjectivePoint {
        ProjectivePoint::from_i64(Q, c).unwrap()
    }

    fn flag(dim: usize, entries: &[Option<&[i64]>]) -> TupleFlag {
        TupleFlag::new(Q, dim, entries.iter().map(|e| e.map(pt)).collect()).unwrap()
    }

    #[test]
    fn normalization() {
        let p = pt(&[0, 2, 3]);
        assert_eq!(p.coords()[1], Q.one());
        assert_eq!(p.coords()[2].to_string(), "3/2");
        assert_eq!(ProjectivePoint::new(p.coords().to_vec()).unwrap(), p);
        assert_eq!(ProjectivePoint::from_i64(Q, &[0, 0]), Err(Error::ZeroVector));
        assert_eq!(pt(&[-2, -3]), pt(&[2, 3]));
    }

    #[test]
    fn f_builder() {
        assert_eq!(build_f(Q, &[1, 2, 3], 3).unwrap(), flag(1, &[Some(&[1]), Some(&[1]), Some(&[1])]));
        assert_eq!(build_f(Q, &[], 3).unwrap(), flag(1, &[None, None, None]));
        assert_eq!(build_f(Q, &[2], 2).unwrap(), flag(1, &[None, Some(&[1])]));
        assert!(matches!(build_f(Q, &[3], 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn d_builder() {
        assert_eq!(
            build_d(Q, &[1, 2, 3], 3).unwrap(),
            flag(2, &[Some(&[1, 0]), Some(&[0, 1]), Some(&[1, 1])])
        );
        assert_eq!(
            build_d(Q, &[1, 2, 3, 4], 4).unwrap(),
            flag(3, &[Some(&[1, 0, 0]), Some(&[0, 1, 0]), Some(&[0, 0, 1]), Some(&[1, 1, 1])])
        );
        assert_eq!(
            build_d(Q, &[1, 3, 4], 4).unwrap(),
            flag(2, &[Some(&[1, 0]), None, Some(&[0, 1]), Some(&[1, 1])])
        );
        assert_eq!(build_d(Q, &[1, 2], 3), Err(Error::BlockTooSmall { size: 2 }));
    }

    #[test]
    fn e_builder() {
        let e = build_e(Q, &[1, 2, 3, 4], 2, &[pt(&[1, 0])], 4).unwrap();
        assert_eq!(e, flag(2, &[Some(&[1, 0]), Some(&[0, 1]), Some(&[1, 1]), Some(&[1, 0])]));

        let q32 = ProjectivePoint::new(vec![Q.one(), Q.parse("3/2").unwrap()]).unwrap();
        let e = build_e(Q, &[1, 2, 3, 4], 2, &[q32], 4).unwrap();
        assert_eq!(e.entries()[3], Some(pt(&[2, 3])));

        let e = build_e(Q, &[1, 2, 3, 4, 5], 2, &[pt(&[1, 1]), pt(&[1, 0])], 5).unwrap();
        assert_eq!(e.dim(), 2);
        assert!(e.entries().iter().all(Option::is_some));

        assert_eq!(
            build_e(Q, &[1, 2, 3], 2, &[], 3),
            Err(Error::RankOutOfRange { rank: 2, size: 3 })
        );
        assert_eq!(
            build_e(Q, &[1, 2, 3, 4], 2, &[], 4),
            Err(Error::QLengthMismatch { expected: 1, found: 0 })
        );
    }

    #[test]
    fn direct_sums() {
        let s = direct_sum(&build_f(Q, &[], 3).unwrap(), &build_f(Q, &[1, 2, 3], 3).unwrap()).unwrap();
        assert_eq!(s, flag(2, &[Some(&[0, 1]), Some(&[0, 1]), Some(&[0, 1])]));

        let s = direct_sum(&build_f(Q, &[1], 3).unwrap(), &build_f(Q, &[2, 3], 3).unwrap()).unwrap();
        assert_eq!(s, flag(2, &[Some(&[1, 0]), Some(&[0, 1]), Some(&[0, 1])]));

        let x = build_d(Q, &[1, 2, 3], 3).unwrap();
        assert_eq!(direct_sum(&x, &TupleFlag::trivial(Q, 3)).unwrap(), x);
        assert_eq!(direct_sum(&TupleFlag::trivial(Q, 3), &x).unwrap(), x);

        assert_eq!(
            direct_sum(&build_f(Q, &[1], 2).unwrap(), &build_f(Q, &[1, 2], 2).unwrap()),
            Err(Error::OverlappingSupports { position: 1 })
        );
    }

    #[test]
    fn dimension_vectors() {
        assert_eq!(
            dimension_vector(&build_d(Q, &[1, 2, 3], 3).unwrap()),
            DimensionVector::d_kr(&[1, 2, 3], 2, 3)
        );
        assert_eq!(dimension_vector(&build_f(Q, &[], 3).unwrap()), DimensionVector::d_kr(&[], 1, 3));
        let e = build_e(Q, &[1, 2, 3, 4], 2, &[pt(&[3, 1])], 4).unwrap();
        assert_eq!(dimension_vector(&e), DimensionVector::d_kr(&[1, 2, 3, 4], 2, 4));
        assert!(DimensionVector::new(0, vec![1]).is_err());
    }

    #[test]
    fn representatives() {
        let p_o = PType::new(vec![], vec![vec![1, 2, 3]], vec![]);
        assert_eq!(
            build_representative(Q, &p_o, &vec![], 2).unwrap(),
            Configuration::from_i64(Q, 2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap()
        );
        // The free summand comes first, so the I-block lands on e2.
        let p_c = PType::new(vec![vec![1, 2, 3]], vec![], vec![]);
        assert_eq!(
            build_representative(Q, &p_c, &vec![], 2).unwrap(),
            Configuration::from_i64(Q, 2, &[&[0, 1], &[0, 1], &[0, 1]]).unwrap()
        );
        let p_g = PType::new(vec![], vec![], vec![KBlock { indices: vec![1, 2, 3, 4], rank: 2 }]);
        assert_eq!(
            build_representative(Q, &p_g, &vec![vec![pt(&[1, 0])]], 2).unwrap(),
            Configuration::from_i64(Q, 2, &[&[1, 0], &[0, 1], &[1, 1], &[1, 0]]).unwrap()
        );
        assert!(matches!(
            build_representative(Q, &p_g, &vec![], 2),
            Err(Error::ModuliShapeMismatch(_))
        ));
        assert!(matches!(build_representative(Q, &p_o, &vec![], 1), Err(Error::InvalidPType(_))));
    }

    #[test]
    fn ptype_canonical_order() {
        let a = PType::new(vec![vec![4], vec![2, 1]], vec![], vec![]);
        assert_eq!(a.i_blocks(), &[vec![1, 2], vec![4]]);
        assert_eq!(a.m(), 3);
    }
}

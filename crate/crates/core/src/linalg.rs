//! Dense exact linear algebra over a [`Field`].
//!
//! Elimination uses a fixed pivoting rule (leftmost nonzero column, topmost
//! nonzero entry) so every derived choice, such as the greedy basis used for
//! fundamental circuits, is reproducible.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};

pub type Vector = Vec<FieldScalar>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldScalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}](", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, ")")
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows; rejects empty input, ragged rows and mixed fields.
    pub fn from_rows(field: Field, rows: Vec<Vec<FieldScalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.is_empty() || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            if row.iter().any(|x| x.field() != field) {
                return Err(Error::FieldMismatch);
            }
            data.extend(row);
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch { expected: rows, found: col.len() });
            }
            for (r, x) in col.iter().enumerate() {
                if x.field() != field {
                    return Err(Error::FieldMismatch);
                }
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Matrix> {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldScalar) {
        debug_assert_eq!(v.field(), self.field);
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldScalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "incompatible shapes for product");
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldScalar]) -> Vector {
        assert_eq!(self.cols, v.len(), "incompatible shapes for product");
        (0..self.rows)
            .map(|r| dot(self.field, self.row(r), v))
            .collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        eliminate(&mut rows, self.cols, None).len()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let r = rref(self);
        (r.rank == self.rows).then_some(r.transform)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

pub fn dot(field: Field, a: &[FieldScalar], b: &[FieldScalar]) -> FieldScalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

pub fn is_zero_vector(v: &[FieldScalar]) -> bool {
    v.iter().all(FieldScalar::is_zero)
}

/// Gauss-Jordan elimination in place on `rows` (each of length `cols`).
/// When `companion` is given, the same row operations are applied to it.
/// Returns the pivot columns.
fn eliminate(
    rows: &mut [Vector],
    cols: usize,
    mut companion: Option<&mut [Vector]>,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        if let Some(comp) = companion.as_deref_mut() {
            comp.swap(next, p);
        }
        let inv = rows[next][c].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            scale_row(&mut rows[next], &inv);
            if let Some(comp) = companion.as_deref_mut() {
                scale_row(&mut comp[next], &inv);
            }
        }
        for r in 0..rows.len() {
            if r == next || rows[r][c].is_zero() {
                continue;
            }
            let factor = rows[r][c].clone();
            axpy_rows(rows, r, next, &factor);
            if let Some(comp) = companion.as_deref_mut() {
                axpy_rows(comp, r, next, &factor);
            }
        }
        pivots.push(c);
        next += 1;
    }
    pivots
}

fn scale_row(row: &mut [FieldScalar], s: &FieldScalar) {
    for x in row.iter_mut() {
        if !x.is_zero() {
            *x = &*x * s;
        }
    }
}

/// rows[target] -= factor * rows[source]
fn axpy_rows(rows: &mut [Vector], target: usize, source: usize, factor: &FieldScalar) {
    let (t, s) = if target < source {
        let (lo, hi) = rows.split_at_mut(source);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(target);
        (&mut hi[0], &lo[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x = &*x - &(factor * y);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RrefResult {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
    /// Invertible matrix with `transform * input == reduced`.
    pub transform: Matrix,
}

pub fn rref(m: &Matrix) -> RrefResult {
    let field = m.field;
    let mut rows = m.to_rows();
    let mut transform = Matrix::identity(field, m.rows).to_rows();
    let pivots = eliminate(&mut rows, m.cols, Some(&mut transform));
    let rank = pivots.len();
    let rebuild = |rows: Vec<Vector>, cols: usize| Matrix {
        field,
        rows: rows.len(),
        cols,
        data: rows.into_iter().flatten().collect(),
    };
    RrefResult {
        reduced: rebuild(rows, m.cols),
        pivots,
        rank,
        transform: rebuild(transform, m.rows),
    }
}

/// One solution of `a x = b`, with free variables set to zero; `None` if inconsistent.
pub fn solve(a: &Matrix, b: &[FieldScalar]) -> Option<Vector> {
    assert_eq!(a.rows, b.len(), "right-hand side length must equal row count");
    let field = a.field;
    let mut rows: Vec<Vector> = (0..a.rows)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = eliminate(&mut rows, a.cols + 1, None);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![field.zero(); a.cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][a.cols].clone();
    }
    Some(x)
}

/// Null-space basis: one vector per non-pivot column, with that coordinate equal to 1.
pub fn kernel_basis(a: &Matrix) -> Vec<Vector> {
    let field = a.field;
    let mut rows = a.to_rows();
    let pivots = eliminate(&mut rows, a.cols, None);
    let mut is_pivot = vec![false; a.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..a.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![field.zero(); a.cols];
            v[f] = field.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[i][f];
            }
            v
        })
        .collect()
}

/// Expansion of one non-basis vector in the greedy basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    /// 0-based index of the non-basis vector.
    pub element: usize,
    /// 0-based indices of basis vectors with nonzero coefficient, increasing.
    pub support: Vec<usize>,
    /// Coefficients aligned with `support`.
    pub coefficients: Vec<FieldScalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCircuits {
    /// Greedy leftmost maximal independent subset, increasing.
    pub basis: Vec<usize>,
    pub circuits: Vec<Circuit>,
}

impl FundamentalCircuits {
    /// Full coefficient vector of `element` with respect to `basis`
    /// (a unit vector for basis elements).
    pub fn coordinates(&self, field: Field, element: usize) -> Vector {
        let mut out = vec![field.zero(); self.basis.len()];
        if let Ok(pos) = self.basis.binary_search(&element) {
            out[pos] = field.one();
            return out;
        }
        let c = self
            .circuits
            .iter()
            .find(|c| c.element == element)
            .expect("every element is in the basis or has a circuit");
        for (s, coef) in c.support.iter().zip(&c.coefficients) {
            let pos = self.basis.binary_search(s).expect("support lies in basis");
            out[pos] = coef.clone();
        }
        out
    }
}

pub fn fundamental_circuits(field: Field, vectors: &[Vector]) -> Result<FundamentalCircuits> {
    let dim = vectors.first().map_or(0, Vec::len);
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
        }
        if is_zero_vector(v) {
            return Err(Error::ZeroVector);
        }
    }
    let m = Matrix::from_columns(field, dim, vectors)?;
    let mut rows = m.to_rows();
    let basis = eliminate(&mut rows, m.cols, None);
    let mut circuits = Vec::new();
    let mut b = 0;
    for j in 0..vectors.len() {
        if b < basis.len() && basis[b] == j {
            b += 1;
            continue;
        }
        // Column j of the reduced matrix holds the coordinates of v_j in the pivot basis.
        let (support, coefficients) = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| !rows[*i][j].is_zero())
            .map(|(i, &col)| (col, rows[i][j].clone()))
            .unzip();
        circuits.push(Circuit { element: j, support, coefficients });
    }
    Ok(FundamentalCircuits { basis, circuits })
}

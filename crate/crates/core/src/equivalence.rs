//! Exact orbit-membership test for two configurations, with a witness.
//!
//! Both inputs are split into components. Components are matched by index set
//! (the group acts diagonally, positions are never permuted). For a matched
//! pair the candidate isomorphisms form the solutions of a homogeneous linear
//! system in the basis scalings `λ_b` and line scalings `μ_j`; the pair is
//! isomorphic iff that solution space contains a vector with no zero
//! coordinate.

use crate::decompose::classify;
use crate::error::{Error, Result};
use crate::field::{Field, FieldScalar};
use crate::linalg::{fundamental_circuits, is_zero_vector, kernel_basis, Matrix, Vector};
use crate::model::{Configuration, ProjectivePoint};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceResult {
    pub equivalent: bool,
    /// Invertible `T` with `T · line_i(A) = line_i(B)` for every i.
    pub witness: Option<Matrix>,
}

impl EquivalenceResult {
    fn no() -> Self {
        EquivalenceResult { equivalent: false, witness: None }
    }
}

/// Searches the span of `basis` for a vector whose coordinates are all nonzero.
fn find_nonvanishing(field: Field, basis: &[Vector]) -> Option<Vector> {
    let len = basis.first()?.len();
    if (0..len).any(|c| basis.iter().all(|v| v[c].is_zero())) {
        return None;
    }
    if basis.len() == 1 {
        return Some(basis[0].clone());
    }
    let combine = |coefs: &[FieldScalar]| -> Vector {
        (0..len)
            .map(|c| {
                basis
                    .iter()
                    .zip(coefs)
                    .fold(field.zero(), |acc, (v, k)| &acc + &(&v[c] * k))
            })
            .collect()
    };
    match field.order() {
        Some(q) => {
            // Exhaustive over all coefficient tuples; the field may be too small
            // for the avoid-finitely-many-hyperplanes argument.
            let d = basis.len() as u32;
            let total = q.checked_pow(d).expect("coefficient space too large");
            (0..total).find_map(|mut code| {
                let coefs: Vec<FieldScalar> = (0..d)
                    .map(|_| {
                        let c = field.from_i64((code % q) as i64);
                        code /= q;
                        c
                    })
                    .collect();
                let v = combine(&coefs);
                v.iter().all(|x| !x.is_zero()).then_some(v)
            })
        }
        None => {
            // Along t ↦ Σ t^i b_i each coordinate is a nonzero polynomial of
            // degree < d, so it vanishes for at most d - 1 values of t.
            let bound = len * (basis.len() - 1) + 1;
            (1..=bound as i64).find_map(|t| {
                let mut coefs = Vec::with_capacity(basis.len());
                let mut pow = field.one();
                let tt = field.from_i64(t);
                for _ in 0..basis.len() {
                    coefs.push(pow.clone());
                    pow = &pow * &tt;
                }
                let v = combine(&coefs);
                v.iter().all(|x| !x.is_zero()).then_some(v)
            })
        }
    }
}

/// For one component (1-based `indices`): the images `λ_b w_b` of A's greedy
/// basis vectors, or `None` if no isomorphism exists.
fn match_component(
    a: &Configuration,
    b: &Configuration,
    indices: &[usize],
) -> Option<(Vec<Vector>, Vec<Vector>)> {
    let field = a.field();
    let n = a.n();
    let v: Vec<Vector> = indices.iter().map(|&i| a.line(i).coords().to_vec()).collect();
    let w: Vec<Vector> = indices.iter().map(|&i| b.line(i).coords().to_vec()).collect();
    let fc = fundamental_circuits(field, &v).expect("lines are nonzero");
    let r = fc.basis.len();
    let k = indices.len();

    // unknowns: λ for each basis position, then μ for each circuit
    let unknowns = r + fc.circuits.len();
    debug_assert_eq!(unknowns, k);
    let mut rows: Vec<Vector> = Vec::new();
    for (ci, c) in fc.circuits.iter().enumerate() {
        for t in 0..n {
            let mut row = vec![field.zero(); unknowns];
            for (s, coef) in c.support.iter().zip(&c.coefficients) {
                let pos = fc.basis.binary_search(s).expect("support in basis");
                row[pos] = coef * &w[*s][t];
            }
            row[r + ci] = -&w[c.element][t];
            if !is_zero_vector(&row) {
                rows.push(row);
            }
        }
    }
    let solution = if rows.is_empty() {
        vec![field.one(); unknowns]
    } else {
        let system = Matrix::from_rows(field, rows).expect("nonempty system");
        find_nonvanishing(field, &kernel_basis(&system))?
    };
    let sources = fc.basis.iter().map(|&p| v[p].clone()).collect();
    let images = fc
        .basis
        .iter()
        .enumerate()
        .map(|(pos, &p)| w[p].iter().map(|x| x * &solution[pos]).collect())
        .collect();
    Some((sources, images))
}

fn extend_to_basis(field: Field, n: usize, mut vecs: Vec<Vector>) -> Vec<Vector> {
    for t in 0..n {
        if vecs.len() == n {
            break;
        }
        let mut e = vec![field.zero(); n];
        e[t] = field.one();
        vecs.push(e);
        let m = Matrix::from_columns(field, n, &vecs).expect("shapes agree");
        if m.rank() < vecs.len() {
            vecs.pop();
        }
    }
    vecs
}

pub fn equivalent(a: &Configuration, b: &Configuration) -> Result<EquivalenceResult> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.n() != b.n() || a.m() != b.m() {
        return Err(Error::ShapeMismatch(format!(
            "(n, m) = ({}, {}) vs ({}, {})",
            a.n(),
            a.m(),
            b.n(),
            b.m()
        )));
    }
    let ra = classify(a)?;
    let rb = classify(b)?;
    if ra.ptype != rb.ptype {
        return Ok(EquivalenceResult::no());
    }

    let field = a.field();
    let n = a.n();
    let mut sources = Vec::new();
    let mut images = Vec::new();
    for comp in &ra.components {
        let Some((s, i)) = match_component(a, b, &comp.indices) else {
            return Ok(EquivalenceResult::no());
        };
        sources.extend(s);
        images.extend(i);
    }
    let sources = extend_to_basis(field, n, sources);
    let images = extend_to_basis(field, n, images);
    let ma = Matrix::from_columns(field, n, &sources).expect("shapes agree");
    let mb = Matrix::from_columns(field, n, &images).expect("shapes agree");
    let t = mb.mul(&ma.inverse().expect("component bases are independent"));
    for (va, wb) in a.lines().iter().zip(b.lines()) {
        let img = ProjectivePoint::new(t.mul_vec(va.coords())).expect("witness is invertible");
        assert_eq!(&img, wb, "witness must map every line");
    }
    Ok(EquivalenceResult { equivalent: true, witness: Some(t) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_e, ProjectivePoint};

    const Q: Field = Field::Rational;

    fn config(n: usize, v: &[&[i64]]) -> Configuration {
        Configuration::from_i64(Q, n, v).unwrap()
    }

    fn check_witness(a: &Configuration, b: &Configuration, r: &EquivalenceResult) {
        let t = r.witness.as_ref().unwrap();
        assert!(t.is_invertible());
        assert_eq!(&a.apply(t).unwrap(), b);
    }

    #[test]
    fn transformed_configuration_is_equivalent() {
        let a = config(3, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[2, 5, 0], &[0, 0, 1], &[0, 0, 1]]);
        let t = Matrix::from_i64(Q, &[&[1, 2, 0], &[0, 1, 3], &[1, 0, 1]]).unwrap();
        let b = a.apply(&t).unwrap();
        let r = equivalent(&a, &b).unwrap();
        assert!(r.equivalent);
        check_witness(&a, &b, &r);
    }

    #[test]
    fn distinct_strata_are_not_equivalent() {
        let p1 = config(2, &[&[1, 0], &[0, 1], &[0, 1]]);
        let p2 = config(2, &[&[0, 1], &[1, 0], &[0, 1]]);
        assert_eq!(equivalent(&p1, &p2).unwrap(), EquivalenceResult::no());
    }

    #[test]
    fn different_moduli_are_not_equivalent() {
        let mk = |q: &[i64]| {
            build_e(Q, &[1, 2, 3, 4], 2, &[ProjectivePoint::from_i64(Q, q).unwrap()], 4)
                .unwrap()
                .to_configuration()
                .unwrap()
        };
        assert!(!equivalent(&mk(&[1, 0]), &mk(&[0, 1])).unwrap().equivalent);
        assert!(equivalent(&mk(&[1, 3]), &mk(&[2, 6])).unwrap().equivalent);
    }

    #[test]
    fn non_generic_components_with_swap_witness() {
        let a = config(2, &[&[1, 0], &[1, 0], &[0, 1], &[1, 1]]);
        let b = config(2, &[&[0, 1], &[0, 1], &[1, 0], &[1, 1]]);
        let r = equivalent(&a, &b).unwrap();
        assert!(r.equivalent);
        check_witness(&a, &b, &r);
        assert_eq!(r.witness.unwrap(), Matrix::from_i64(Q, &[&[0, 1], &[1, 0]]).unwrap());
    }

    #[test]
    fn errors() {
        let a = config(2, &[&[1, 0]]);
        let b = config(3, &[&[1, 0, 0]]);
        assert!(matches!(equivalent(&a, &b), Err(Error::ShapeMismatch(_))));
        let f = Field::prime(3).unwrap();
        let c = Configuration::from_i64(f, 2, &[&[1, 0]]).unwrap();
        assert_eq!(equivalent(&a, &c), Err(Error::FieldMismatch));
    }

    #[test]
    fn nonvanishing_search_needs_combination() {
        // span{(1, 0, 1), (0, 1, 1)}: neither basis vector works, their sum does
        let basis = vec![
            vec![Q.one(), Q.zero(), Q.one()],
            vec![Q.zero(), Q.one(), Q.one()],
        ];
        let v = find_nonvanishing(Q, &basis).unwrap();
        assert!(v.iter().all(|x| !x.is_zero()));

        let f = Field::prime(2).unwrap();
        // over F_2: span{(1,0,1),(0,1,1)} = {0, (1,0,1), (0,1,1), (1,1,0)} has no such vector
        let basis = vec![
            vec![f.one(), f.zero(), f.one()],
            vec![f.zero(), f.one(), f.one()],
        ];
        assert_eq!(find_nonvanishing(f, &basis), None);
    }

    #[test]
    fn free_complement_is_extended() {
        let a = config(3, &[&[1, 0, 0], &[1, 0, 0]]);
        let b = config(3, &[&[0, 1, 1], &[0, 1, 1]]);
        let r = equivalent(&a, &b).unwrap();
        assert!(r.equivalent);
        check_witness(&a, &b, &r);
    }
}

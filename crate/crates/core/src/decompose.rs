//! Splitting a configuration into indecomposable summands and computing its
//! stratum label together with the moduli of each generic E-component.
//!
//! For line configurations the direct-sum splitting coincides with the
//! connected components of the linear matroid on the lines: a circuit cannot
//! cross a direct-sum decomposition, and a separator of the matroid splits the
//! span into complementary subspaces. Components are found from the
//! fundamental-circuit graph over the greedy basis.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{fundamental_circuits, solve, FundamentalCircuits, Matrix, Vector};
use crate::model::{build_representative, Configuration, KBlock, Moduli, PType, ProjectivePoint};
use crate::ptype::{r_of, validate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    F,
    D,
    E,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComponentKind::F => "F",
            ComponentKind::D => "D",
            ComponentKind::E => "E",
        };
        write!(f, "{s}")
    }
}

/// One indecomposable summand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    /// 1-based, increasing.
    pub indices: Vec<usize>,
    pub rank: usize,
    /// The component's lines in coordinates of its own span (dimension `rank`).
    pub lines: Configuration,
    /// Whether the first `rank + 1` lines are in general position. Always true
    /// for F and D components.
    pub generic: bool,
    /// Moduli points, present exactly for generic E-components.
    pub q: Option<Vec<ProjectivePoint>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationRecord {
    pub field: Field,
    pub n: usize,
    pub m: usize,
    pub ptype: PType,
    /// Number of free one-dimensional summands, `n - r(p)`.
    pub free_multiplicity: usize,
    /// Ordered by smallest index.
    pub components: Vec<Component>,
}

impl ClassificationRecord {
    /// Moduli for each K-block in canonical order; `None` if some
    /// E-component is not generic.
    pub fn moduli(&self) -> Option<Moduli> {
        self.ptype
            .k_blocks()
            .iter()
            .map(|k| {
                self.components
                    .iter()
                    .find(|c| c.indices == k.indices)
                    .and_then(|c| c.q.clone())
            })
            .collect()
    }

    pub fn is_generic(&self) -> bool {
        self.components.iter().all(|c| c.generic)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn components_from_circuits(m: usize, fc: &FundamentalCircuits) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(m);
    for c in &fc.circuits {
        for &b in &c.support {
            uf.union(c.element, b);
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; m];
    for i in 0..m {
        let root = uf.find(i);
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(i + 1);
    }
    groups
}

/// Connected components of the linear matroid on the lines (1-based, ordered by minimum).
pub fn matroid_components(config: &Configuration) -> Vec<Vec<usize>> {
    let fc = fundamental_circuits(config.field(), &config.vectors())
        .expect("configuration lines are nonzero");
    components_from_circuits(config.m(), &fc)
}

/// The lines at `indices` expressed in the greedy basis of their span.
pub fn restrict(config: &Configuration, indices: &[usize]) -> Configuration {
    let field = config.field();
    let vectors: Vec<Vector> = indices.iter().map(|&i| config.line(i).coords().to_vec()).collect();
    let fc = fundamental_circuits(field, &vectors).expect("configuration lines are nonzero");
    let coords = (0..vectors.len()).map(|j| fc.coordinates(field, j)).collect();
    Configuration::from_vectors(field, fc.basis.len(), coords)
        .expect("restricted coordinates are nonzero")
}

fn is_general_position(field: Field, dim: usize, points: &[&ProjectivePoint]) -> bool {
    (0..points.len()).all(|skip| {
        let cols: Vec<Vector> = points
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, p)| p.coords().to_vec())
            .collect();
        Matrix::from_columns(field, dim, &cols).expect("shapes agree").rank() == dim
    })
}

/// Moduli of a generic E-component: `g(F)^{-1}` applied to the lines after the anchors,
/// where `g(F)` sends the standard frame to the first `r + 1` lines.
fn normal_form(sub: &Configuration) -> Vec<ProjectivePoint> {
    let field = sub.field();
    let r = sub.n();
    let anchors: Vec<Vector> = sub.lines()[..r].iter().map(|p| p.coords().to_vec()).collect();
    let a = Matrix::from_columns(field, r, &anchors).expect("shapes agree");
    let lambda = solve(&a, sub.lines()[r].coords()).expect("anchors span the space");
    assert!(lambda.iter().all(|l| !l.is_zero()), "anchors in general position");
    let scale = lambda[0].inv().expect("nonzero");
    let cols: Vec<Vector> = anchors
        .iter()
        .zip(&lambda)
        .map(|(v, l)| {
            let l = l * &scale;
            v.iter().map(|x| x * &l).collect()
        })
        .collect();
    let g = Matrix::from_columns(field, r, &cols).expect("shapes agree");
    sub.lines()[r + 1..]
        .iter()
        .map(|v| {
            let x = solve(&g, v.coords()).expect("g is invertible");
            ProjectivePoint::new(x).expect("preimage of a line is nonzero")
        })
        .collect()
}

/// Classifies a connected sub-configuration that spans its ambient space.
pub fn classify_component(indices: &[usize], sub: &Configuration) -> Result<Component> {
    if indices.len() != sub.m() {
        return Err(Error::ShapeMismatch(format!(
            "{} indices for {} lines",
            indices.len(),
            sub.m()
        )));
    }
    let field = sub.field();
    let r = sub.n();
    let k = sub.m();
    let fc = fundamental_circuits(field, &sub.vectors())?;
    if fc.basis.len() != r {
        return Err(Error::NotSpanning);
    }
    if components_from_circuits(k, &fc).len() != 1 {
        return Err(Error::NotConnected);
    }
    let mut indices = indices.to_vec();
    indices.sort_unstable();

    let anchors: Vec<&ProjectivePoint> = sub.lines().iter().take(r + 1).collect();
    let (kind, generic, q) = if r == 1 {
        (ComponentKind::F, true, None)
    } else if k == r + 1 {
        // a connected spanning set of r+1 lines in rank r is a single circuit
        assert!(
            is_general_position(field, r, &anchors),
            "connected component with k = r + 1 must be in general position"
        );
        (ComponentKind::D, true, None)
    } else {
        debug_assert!(k >= r + 2);
        if is_general_position(field, r, &anchors) {
            (ComponentKind::E, true, Some(normal_form(sub)))
        } else {
            (ComponentKind::E, false, None)
        }
    };
    Ok(Component { kind, indices, rank: r, lines: sub.clone(), generic, q })
}

pub fn classify(config: &Configuration) -> Result<ClassificationRecord> {
    let n = config.n();
    let m = config.m();
    let mut components = Vec::new();
    for idx in matroid_components(config) {
        let sub = restrict(config, &idx);
        components.push(classify_component(&idx, &sub)?);
    }
    let (mut i, mut j, mut k) = (Vec::new(), Vec::new(), Vec::new());
    for c in &components {
        match c.kind {
            ComponentKind::F => i.push(c.indices.clone()),
            ComponentKind::D => j.push(c.indices.clone()),
            ComponentKind::E => k.push(KBlock { indices: c.indices.clone(), rank: c.rank }),
        }
    }
    let ptype = PType::new(i, j, k);
    let total_rank: usize = components.iter().map(|c| c.rank).sum();
    assert!(total_rank <= n, "component ranks exceed ambient dimension");
    let free_multiplicity = n - total_rank;
    debug_assert_eq!(total_rank, r_of(&ptype));
    debug_assert!(validate(&ptype, n, m).is_valid());
    Ok(ClassificationRecord { field: config.field(), n, m, ptype, free_multiplicity, components })
}

/// Whether classifying `F(p, q)` gives back exactly `(p, q)`.
pub fn round_trip_check(field: Field, p: &PType, q: &Moduli, n: usize) -> Result<bool> {
    let config = build_representative(field, p, q, n)?;
    let rec = classify(&config)?;
    Ok(rec.ptype == *p
        && rec.free_multiplicity == n - r_of(p)
        && rec.moduli().as_ref() == Some(q))
}

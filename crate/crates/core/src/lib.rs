//! Exact classification of configurations of m lines in n-dimensional space
//! up to simultaneous invertible change of coordinates.
//!
//! A configuration is split into indecomposable summands ([`decompose`]),
//! labelled by a stratum [`PType`](model::PType), and, on the open part of each
//! stratum, by explicit moduli points. [`equivalence`] decides orbit
//! membership exactly with a witness, and [`census`] checks everything against
//! brute-force orbit enumeration over small prime fields.

pub mod census;
pub mod decompose;
pub mod equivalence;
pub mod error;
pub mod field;
pub mod invariants;
pub mod linalg;
pub mod model;
pub mod ptype;
pub mod wire;

pub use decompose::{classify, ClassificationRecord, Component, ComponentKind};
pub use equivalence::{equivalent, EquivalenceResult};
pub use error::{Error, Result};
pub use field::{Field, FieldScalar};
pub use linalg::{Matrix, Vector};
pub use model::{
    build_representative, Configuration, DimensionVector, KBlock, Moduli, PType, ProjectivePoint,
    TupleFlag,
};

//! JSON wire formats. Scalars are strings (`"3"`, `"-3"`, `"3/2"`), indices
//! are 1-based, and every object serializes with a fixed key order.

use serde::{Deserialize, Serialize};

use crate::census::CensusReport;
use crate::decompose::ClassificationRecord;
use crate::equivalence::EquivalenceResult;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::invariants::StabilizerShape;
use crate::linalg::Matrix;
use crate::model::{Configuration, KBlock, Moduli, PType, ProjectivePoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime { prime: u64 },
}

impl FieldJson {
    pub fn from_field(f: Field) -> FieldJson {
        match f {
            Field::Rational => FieldJson::Named("rational".into()),
            Field::Prime(p) => FieldJson::Prime { prime: p },
        }
    }

    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldJson::Named(s) if s == "rational" => Ok(Field::Rational),
            FieldJson::Named(s) => Err(Error::Format(format!("unknown field {s:?}"))),
            FieldJson::Prime { prime } => Field::prime(*prime),
        }
    }
}

/// A scalar on input may be a string or a plain JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarJson {
    Text(String),
    Int(i64),
}

impl ScalarJson {
    fn parse(&self, field: Field) -> Result<crate::field::FieldScalar> {
        match self {
            ScalarJson::Text(s) => field.parse(s),
            ScalarJson::Int(v) => Ok(field.from_i64(*v)),
        }
    }
}

pub type PointJson = Vec<ScalarJson>;

fn point_to_json(p: &ProjectivePoint) -> PointJson {
    p.coords().iter().map(|x| ScalarJson::Text(x.to_string())).collect()
}

fn point_from_json(field: Field, p: &PointJson) -> Result<ProjectivePoint> {
    let coords = p.iter().map(|s| s.parse(field)).collect::<Result<Vec<_>>>()?;
    ProjectivePoint::new(coords)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationJson {
    pub field: FieldJson,
    pub n: usize,
    pub lines: Vec<PointJson>,
}

impl ConfigurationJson {
    pub fn from_config(c: &Configuration) -> Self {
        ConfigurationJson {
            field: FieldJson::from_field(c.field()),
            n: c.n(),
            lines: c.lines().iter().map(point_to_json).collect(),
        }
    }

    pub fn to_config(&self) -> Result<Configuration> {
        let field = self.field.to_field()?;
        let lines = self
            .lines
            .iter()
            .map(|l| point_from_json(field, l))
            .collect::<Result<Vec<_>>>()?;
        Configuration::new(field, self.n, lines)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KBlockJson {
    pub indices: Vec<usize>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PTypeJson {
    #[serde(rename = "I", default)]
    pub i: Vec<Vec<usize>>,
    #[serde(rename = "J", default)]
    pub j: Vec<Vec<usize>>,
    #[serde(rename = "K", default)]
    pub k: Vec<KBlockJson>,
}

impl PTypeJson {
    pub fn from_ptype(p: &PType) -> Self {
        PTypeJson {
            i: p.i_blocks().to_vec(),
            j: p.j_blocks().to_vec(),
            k: p
                .k_blocks()
                .iter()
                .map(|k| KBlockJson { indices: k.indices.clone(), rank: k.rank })
                .collect(),
        }
    }

    pub fn to_ptype(&self) -> PType {
        PType::new(
            self.i.clone(),
            self.j.clone(),
            self.k
                .iter()
                .map(|k| KBlock { indices: k.indices.clone(), rank: k.rank })
                .collect(),
        )
    }
}

pub type ModuliJson = Vec<Vec<PointJson>>;

pub fn moduli_to_json(q: &Moduli) -> ModuliJson {
    q.iter().map(|pts| pts.iter().map(point_to_json).collect()).collect()
}

pub fn moduli_from_json(field: Field, q: &ModuliJson) -> Result<Moduli> {
    q.iter()
        .map(|pts| pts.iter().map(|p| point_from_json(field, p)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub kind: String,
    pub indices: Vec<usize>,
    pub rank: usize,
    pub generic: bool,
    pub q: Option<Vec<PointJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordJson {
    pub field: FieldJson,
    pub n: usize,
    pub m: usize,
    pub ptype: PTypeJson,
    pub free_multiplicity: usize,
    pub components: Vec<ComponentJson>,
}

impl RecordJson {
    pub fn from_record(r: &ClassificationRecord) -> Self {
        RecordJson {
            field: FieldJson::from_field(r.field),
            n: r.n,
            m: r.m,
            ptype: PTypeJson::from_ptype(&r.ptype),
            free_multiplicity: r.free_multiplicity,
            components: r
                .components
                .iter()
                .map(|c| ComponentJson {
                    kind: c.kind.to_string(),
                    indices: c.indices.clone(),
                    rank: c.rank,
                    generic: c.generic,
                    q: c.q.as_ref().map(|q| q.iter().map(point_to_json).collect()),
                })
                .collect(),
        }
    }
}

pub type MatrixJson = Vec<Vec<String>>;

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceJson {
    pub equivalent: bool,
    pub witness: Option<MatrixJson>,
}

impl EquivalenceJson {
    pub fn from_result(r: &EquivalenceResult) -> Self {
        EquivalenceJson { equivalent: r.equivalent, witness: r.witness.as_ref().map(matrix_to_json) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibreCountJson {
    pub ptype: PTypeJson,
    pub orbits: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusJson {
    pub n: usize,
    pub m: usize,
    pub q: u64,
    pub total_configurations: u64,
    pub brute_force_orbits: u64,
    pub burnside_orbits: u64,
    pub pipeline_orbits: u64,
    pub per_ptype: Vec<FibreCountJson>,
    pub agreement: bool,
}

impl CensusJson {
    pub fn from_report(r: &CensusReport) -> Self {
        CensusJson {
            n: r.n,
            m: r.m,
            q: r.q,
            total_configurations: r.total_configurations,
            brute_force_orbits: r.brute_force_orbits,
            burnside_orbits: r.burnside_orbits,
            pipeline_orbits: r.pipeline_orbits,
            per_ptype: r
                .per_ptype
                .iter()
                .map(|(p, c)| FibreCountJson { ptype: PTypeJson::from_ptype(p), orbits: *c })
                .collect(),
            agreement: r.agreement,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerJson {
    pub diagonal: usize,
    pub j_blocks: Vec<usize>,
    pub k_blocks: Vec<usize>,
    pub free: usize,
    pub dimension: usize,
}

impl From<&StabilizerShape> for StabilizerJson {
    fn from(s: &StabilizerShape) -> Self {
        StabilizerJson {
            diagonal: s.diagonal,
            j_blocks: s.j_blocks.clone(),
            k_blocks: s.k_blocks.clone(),
            free: s.free,
            dimension: s.dimension,
        }
    }
}

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("wire types always serialize")
}

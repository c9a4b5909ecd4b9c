//! Subcommand implementations. Each returns the JSON text for stdout, or a
//! [`CliError`] carrying the exit code and a stable error code.

use std::fmt;

use flagorbit_core::census::{run_census_with_budget, DEFAULT_BUDGET};
use flagorbit_core::invariants::{
    dkr_grid, endomorphism_dim, has_open_orbit, is_finite_type, orbit_dimension, stabilizer_shape,
    tits_form_closed, tits_form_definitional, tits_form_dkr,
};
use flagorbit_core::ptype::{enumerate, r_of, validate};
use flagorbit_core::wire::{
    moduli_from_json, parse_json, to_json, CensusJson, ConfigurationJson, EquivalenceJson, FieldJson, ModuliJson,
    PTypeJson, RecordJson, StabilizerJson,
};
use flagorbit_core::{build_representative, classify, equivalent, DimensionVector, Error, Field, PType};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub exit: u8,
    pub code: String,
    pub message: String,
}

impl CliError {
    pub fn domain(code: &str, message: impl Into<String>) -> Self {
        CliError { exit: 1, code: code.into(), message: message.into() }
    }

    pub fn internal(code: &str, message: impl Into<String>) -> Self {
        CliError { exit: 2, code: code.into(), message: message.into() }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({"error": {"code": self.code, "message": self.message}}).to_string()
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::domain(e.code(), e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

pub type CliResult = Result<String, CliError>;

#[derive(Serialize)]
struct PTypeList {
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    ptypes: Option<Vec<PTypeJson>>,
}

pub fn enumerate_ptypes(n: usize, m: usize, count_only: bool) -> CliResult {
    let all = enumerate(n, m);
    let out = PTypeList {
        count: all.len(),
        ptypes: (!count_only).then(|| all.iter().map(PTypeJson::from_ptype).collect()),
    };
    Ok(to_json(&out))
}

pub fn classify_cmd(input: &str) -> CliResult {
    let config = parse_json::<ConfigurationJson>(input)?.to_config()?;
    Ok(to_json(&RecordJson::from_record(&classify(&config)?)))
}

/// Input of `represent`: a stratum, its moduli, and the ambient dimension.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentRequest {
    #[serde(default = "rational")]
    pub field: FieldJson,
    pub n: usize,
    pub ptype: PTypeJson,
    #[serde(default)]
    pub q: ModuliJson,
}

fn rational() -> FieldJson {
    FieldJson::from_field(Field::Rational)
}

pub fn represent(input: &str) -> CliResult {
    let req: RepresentRequest = parse_json(input)?;
    let field = req.field.to_field()?;
    let p = req.ptype.to_ptype();
    let q = moduli_from_json(field, &req.q)?;
    let config = build_representative(field, &p, &q, req.n)?;
    Ok(to_json(&ConfigurationJson::from_config(&config)))
}

pub fn equiv(a: &str, b: &str) -> CliResult {
    let a = parse_json::<ConfigurationJson>(a)?.to_config()?;
    let b = parse_json::<ConfigurationJson>(b)?.to_config()?;
    Ok(to_json(&EquivalenceJson::from_result(&equivalent(&a, &b)?)))
}

pub fn census(n: usize, m: usize, prime: u64, check: bool, budget: Option<u128>) -> CliResult {
    let report = run_census_with_budget(n, m, prime, budget.unwrap_or(DEFAULT_BUDGET))?;
    let text = to_json(&CensusJson::from_report(&report));
    if check && !report.agreement {
        return Err(CliError::internal("census_disagreement", text));
    }
    Ok(text)
}

#[derive(Serialize)]
struct TitsValue {
    indices: Vec<usize>,
    rank: usize,
    value: i64,
}

#[derive(Serialize)]
struct OpenOrbit {
    exists: bool,
    witness: Option<PTypeJson>,
}

#[derive(Serialize)]
struct StratumInvariants {
    ptype: PTypeJson,
    r: usize,
    orbit_dimension: usize,
    stabilizer: StabilizerJson,
    /// Tits form of each indecomposable summand's dimension vector.
    summands: Vec<TitsValue>,
}

#[derive(Serialize)]
struct InvariantsReport {
    n: usize,
    m: usize,
    ambient_tits_form: i64,
    open_orbit: OpenOrbit,
    finite_type: bool,
    stratum_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    stratum: Option<StratumInvariants>,
}

fn summand_blocks(p: &PType) -> Vec<(Vec<usize>, usize)> {
    let mut out: Vec<(Vec<usize>, usize)> = Vec::new();
    out.extend(p.i_blocks().iter().map(|b| (b.clone(), 1)));
    out.extend(p.j_blocks().iter().map(|b| (b.clone(), b.len() - 1)));
    out.extend(p.k_blocks().iter().map(|k| (k.indices.clone(), k.rank)));
    out.sort();
    out
}

pub fn invariants(n: usize, m: usize, ptype: Option<&str>) -> CliResult {
    if n == 0 || m == 0 {
        return Err(CliError::domain("invalid_configuration", "n and m must be positive"));
    }
    let all: Vec<usize> = (1..=m).collect();
    let (exists, witness) = has_open_orbit(n, m);
    let stratum = match ptype {
        None => None,
        Some(text) => {
            let p = parse_json::<PTypeJson>(text)?.to_ptype();
            let report = validate(&p, n, m);
            if !report.is_valid() {
                return Err(Error::InvalidPType(report.to_string()).into());
            }
            Some(StratumInvariants {
                ptype: PTypeJson::from_ptype(&p),
                r: r_of(&p),
                orbit_dimension: orbit_dimension(&p, n)?,
                stabilizer: StabilizerJson::from(&stabilizer_shape(&p, n)?),
                summands: summand_blocks(&p)
                    .into_iter()
                    .map(|(indices, rank)| {
                        let value = tits_form_dkr(&indices, rank);
                        TitsValue { indices, rank, value }
                    })
                    .collect(),
            })
        }
    };
    let report = InvariantsReport {
        n,
        m,
        ambient_tits_form: tits_form_dkr(&all, n),
        open_orbit: OpenOrbit { exists, witness: witness.as_ref().map(PTypeJson::from_ptype) },
        finite_type: is_finite_type(n, m),
        stratum_count: enumerate(n, m).len(),
        stratum,
    };
    Ok(to_json(&report))
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
}

#[derive(Serialize)]
struct SelfcheckReport {
    passed: bool,
    checks: Vec<Check>,
}

/// Deterministic moduli for `p`: the h-th point of a block of rank r is
/// `(1, h+2, (h+2)^2, ...)`.
fn sample_moduli(p: &PType) -> Vec<Vec<flagorbit_core::ProjectivePoint>> {
    p.moduli_shape()
        .into_iter()
        .map(|(len, rank)| {
            (0..len)
                .map(|h| {
                    let coords: Vec<i64> = (0..rank as u32).map(|e| (h as i64 + 2).pow(e)).collect();
                    flagorbit_core::ProjectivePoint::from_i64(Field::Rational, &coords).expect("nonzero")
                })
                .collect()
        })
        .collect()
}

fn check_round_trips() -> bool {
    (1..=6).all(|n| {
        (1..=6).all(|m| {
            enumerate(n, m).iter().all(|p| {
                let q = sample_moduli(p);
                let Ok(c) = build_representative(Field::Rational, p, &q, n) else {
                    return false;
                };
                let Ok(rec) = classify(&c) else {
                    return false;
                };
                let blocks = p.i_blocks().len() + p.j_blocks().len() + p.k_blocks().len();
                rec.ptype == *p
                    && rec.moduli() == Some(q)
                    && endomorphism_dim(&c) == n * n - (n * r_of(p) - blocks)
            })
        })
    })
}

fn check_tits() -> bool {
    (1..=6).all(|n| {
        (1..=6).all(|m| {
            dkr_grid(n, m).all(|kb| {
                let d = DimensionVector::d_kr(&kb.indices, kb.rank, m);
                let q = tits_form_definitional(&d);
                q == tits_form_closed(&d) && q == tits_form_dkr(&kb.indices, kb.rank)
            })
        })
    })
}

fn check_criteria() -> bool {
    (2..=6).all(|n| {
        (1..=6).all(|m| {
            let all = enumerate(n, m);
            let max = all.iter().filter_map(|p| orbit_dimension(p, n).ok()).max().unwrap_or(0);
            let open = max == m * (n - 1);
            let finite = all.iter().all(|p| p.k_blocks().is_empty());
            open == (n + 1 >= m) && has_open_orbit(n, m).0 == open && finite == is_finite_type(n, m)
        })
    })
}

fn check_census(n: usize, m: usize, q: u64, orbits: u64) -> bool {
    run_census_with_budget(n, m, q, DEFAULT_BUDGET)
        .map(|r| r.agreement && r.brute_force_orbits == orbits)
        .unwrap_or(false)
}

pub fn selfcheck() -> CliResult {
    let checks = vec![
        Check { name: "round_trip_and_stabilizer", passed: check_round_trips() },
        Check { name: "tits_form", passed: check_tits() },
        Check { name: "open_orbit_and_finite_type", passed: check_criteria() },
        Check { name: "census_2_3_2", passed: check_census(2, 3, 2, 5) },
        Check { name: "census_2_4_2", passed: check_census(2, 4, 2, 14) },
        Check { name: "census_2_4_3", passed: check_census(2, 4, 3, 15) },
    ];
    let passed = checks.iter().all(|c| c.passed);
    let text = to_json(&SelfcheckReport { passed, checks });
    if passed {
        Ok(text)
    } else {
        Err(CliError::internal("selfcheck_failed", text))
    }
}

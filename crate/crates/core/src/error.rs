use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime modulus {0} is too large (must be below 2^31)")]
    ModulusTooLarge(u64),
    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different fields were mixed")]
    FieldMismatch,
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
    #[error("index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("block of size {size} is too small (need at least 3)")]
    BlockTooSmall { size: usize },
    #[error("rank {rank} out of range for a block of size {size}")]
    RankOutOfRange { rank: usize, size: usize },
    #[error("expected {expected} moduli points, found {found}")]
    QLengthMismatch { expected: usize, found: usize },
    #[error("invalid ptype: {0}")]
    InvalidPType(String),
    #[error("moduli do not match the ptype: {0}")]
    ModuliShapeMismatch(String),
    #[error("both summands have a line at position {position}")]
    OverlappingSupports { position: usize },
    #[error("multiplicity vector is not realizable: {0}")]
    NotRealizable(String),
    #[error("sub-configuration is not connected")]
    NotConnected,
    #[error("sub-configuration does not span its ambient space")]
    NotSpanning,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("census needs about {needed} operations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("malformed input: {0}")]
    Format(String),
}

impl Error {
    /// Stable machine-readable identifier, used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "not_prime",
            Error::ModulusTooLarge(_) => "modulus_too_large",
            Error::ParseScalar(_) => "parse_scalar",
            Error::DivisionByZero => "division_by_zero",
            Error::FieldMismatch => "field_mismatch",
            Error::EmptyMatrix => "empty_matrix",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroVector => "zero_vector",
            Error::InvalidConfiguration(_) => "invalid_configuration",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::BlockTooSmall { .. } => "block_too_small",
            Error::RankOutOfRange { .. } => "rank_out_of_range",
            Error::QLengthMismatch { .. } => "q_length_mismatch",
            Error::InvalidPType(_) => "invalid_ptype",
            Error::ModuliShapeMismatch(_) => "moduli_shape_mismatch",
            Error::OverlappingSupports { .. } => "overlapping_supports",
            Error::NotRealizable(_) => "not_realizable",
            Error::NotConnected => "not_connected",
            Error::NotSpanning => "not_spanning",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::Format(_) => "format",
        }
    }
}

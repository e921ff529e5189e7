//! Error type shared by validation, solvers, and oracles.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown setting `{0}`")]
    UnknownSetting(String),

    #[error("voter {index}: expected a {expected} ballot, got {got}")]
    VariantMismatch {
        index: usize,
        expected: &'static str,
        got: &'static str,
    },

    #[error("election has no voters")]
    EmptyElection,

    #[error("alternative universe is empty")]
    EmptyUniverse,

    #[error("duplicate alternative `{0}` in universe")]
    DuplicateAlternative(String),

    #[error("voter {index}: unknown alternative `{id}`")]
    UnknownAlternative { index: usize, id: String },

    #[error("voter {index}: simplex weight {weight} is negative")]
    NegativeWeight { index: usize, weight: f64 },

    #[error("voter {index}: weights sum to {sum}, deviating more than 1e-6 from 1")]
    WeightSumOff { index: usize, sum: f64 },

    #[error("voter {index}: ballot is not a bijection over the alternatives")]
    NotABijection { index: usize },

    #[error("committee size k is missing")]
    MissingK,

    #[error("committee size k = {k} exceeds m = {m} alternatives")]
    KTooLarge { k: usize, m: usize },

    #[error("committee size k must be at least 1")]
    KZero,

    #[error("sentence contains the reserved separator character")]
    ReservedSeparator,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("permutations range over different alternative universes")]
    UniverseMismatch,

    #[error("document length {len} exceeds the election bound l = {ell}")]
    EllTooSmall { ell: usize, len: usize },

    #[error("{what} requires {required} {unit}, exceeding the guard of {limit}")]
    GuardExceeded {
        what: &'static str,
        required: u128,
        limit: u128,
        unit: &'static str,
    },

    #[error("invalid aggregation spec: {0}")]
    InvalidSpec(String),

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Guard violations get a dedicated exit code in the CLI.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}

use thiserror::Error;

/// Errors produced by ingestion, solvers, and serialization.
///
/// Infeasibility is *not* an error: solvers report it through
/// [`crate::binning::SolveOutcome::Infeasible`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("input contains no rows")]
    EmptyInput,
    #[error("group id {id} is not a valid group (expected id < {ell})")]
    UnknownGroup { id: usize, ell: usize },
    #[error("non-finite value at input row {row}")]
    NonFiniteValue { row: usize },
    #[error("group `{group}` has no members")]
    EmptyGroup { group: String },
    #[error("at least two groups are required, got {ell}")]
    TooFewGroups { ell: usize },
    #[error("{ell} groups exceed the supported maximum of {max}")]
    TooManyGroups { ell: usize, max: usize },
    #[error("n={n} exceeds the supported maximum of {cap}")]
    InputTooLarge { n: usize, cap: usize },
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("empty range ({lo}, {hi}]")]
    EmptyRange { lo: usize, hi: usize },
    #[error("bucket count k={k} must satisfy 2 <= k <= n={n}")]
    BadK { k: usize, n: usize },
    #[error("epsilon {num}/{den} must lie in [0, 1] with a positive denominator")]
    BadEpsilon { num: u64, den: u64 },
    #[error("n={n} exceeds the quadratic-solver cap of {cap}; use the local-search solver (eps-ls) instead")]
    EpsDpCapExceeded { n: usize, cap: usize },
    #[error("enumeration budget exceeded: {needed} combinations > budget {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("DP predecessor chain is broken at position {pos}, layer {layer}")]
    CorruptMatrix { pos: usize, layer: usize },
    #[error("column `{name}` not found in CSV header")]
    MissingColumn { name: String },
    #[error("row {row}: cannot parse column `{column}`: {message}")]
    ParseError {
        row: usize,
        column: String,
        message: String,
    },
    #[error("invalid synthetic spec: {0}")]
    BadSpec(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

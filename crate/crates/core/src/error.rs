use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{context}: {source} (line {line}, column {column})")]
    Format {
        context: String,
        line: usize,
        column: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("non-invertible basis change")]
    SingularBasisChange,
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("subalgebra closure violated: [{left}, {right}] has component {coeff} along {outside}")]
    ClosureViolation { left: String, right: String, outside: String, coeff: String },
    #[error("non-integer label count: {0}")]
    NonIntegerLabelCount(String),
    #[error("parity violation: {0}")]
    ParityViolation(String),
    #[error("input is not a Casimir function")]
    NotACasimir,
    #[error("degree cap exceeded: {0}")]
    DegreeCap(String),
    #[error("monomial basis of {size} exceeds the cap of {cap} monomials")]
    MonomialCap { size: usize, cap: usize },
    #[error("intermediate term ceiling of {cap} words exceeded{}", checkpoint.as_ref().map(|c| format!("; resume from {c}")).unwrap_or_default())]
    TermCeiling { cap: usize, checkpoint: Option<String> },
    #[error("insufficient candidates; consider higher-degree Casimirs or finer splitting (needed {needed}, found {found})")]
    InsufficientCandidates { needed: usize, found: usize },
    #[error("no {needed} independent candidates commute exactly; nonzero commutators: {}", pairs.join(", "))]
    NoCommutingSubset { needed: usize, pairs: Vec<String> },
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for failures caused by malformed or inconsistent input, as
    /// opposed to a mathematical outcome.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::InsufficientCandidates { .. } | Error::NoCommutingSubset { .. } | Error::NotACasimir | Error::ClosureViolation { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("malformed rational literal {0:?}; expected j or j/k")]
    Malformed(String),
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("denominator must be odd (3x+1 acts on fractions with odd denominator), got reduced denominator {0}")]
    EvenDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VectorError {
    #[error("parity vector must be nonempty")]
    Empty,
    #[error("parity vector may contain only 0 and 1, found {0:?}")]
    NonBinary(char),
    #[error("vector length {0} outside the supported range 1..={1}")]
    Length(usize, usize),
    #[error("omega {omega} exceeds lambda {lambda}")]
    OmegaTooLarge { lambda: usize, omega: usize },
    #[error("k = {k} does not divide |2^{lambda} - 3^{omega}| = {j}")]
    NotADivisor {
        k: u64,
        lambda: usize,
        omega: usize,
        j: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("denominator k = {0} is not 1 or 5 mod 6; T does not preserve D_k")]
    BadResidue(u64),
    #[error("{0} must be at least 1")]
    NonPositive(&'static str),
    #[error("depths must be strictly increasing")]
    DepthsNotIncreasing,
    #[error("report has no attractors")]
    NoAttractors,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("all points share the same depth")]
    DegenerateDepths,
}

#[derive(Debug, Error)]
pub enum RecordError {
    #[error("cycle is empty")]
    Empty,
    #[error("denominator k = {0} is not 1 or 5 mod 6")]
    BadResidue(u64),
    #[error("numerator {0} is not a positive integer coprime to k = {1}")]
    BadNumerator(String, u64),
    #[error("T does not close around the listed cycle for k = {0}")]
    NotACycle(u64),
    #[error("cycle for k = {0} repeats a value")]
    Repeated(u64),
    #[error("field {field} disagrees with the cycle: stored {stored}, computed {computed}")]
    Mismatch {
        field: &'static str,
        stored: String,
        computed: String,
    },
    #[error("invalid registry line: {0}")]
    Json(#[from] serde_json::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

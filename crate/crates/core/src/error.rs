use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid hypergroup data: {0}")]
    InvalidHypergroup(String),

    #[error("no translate of f0 reaches point {point}")]
    NoCover { point: usize },

    #[error("non-positive denominator (mu0 * g)({point}) = {value}")]
    ZeroDenominator { point: usize, value: f64 },

    #[error("normalizer <f0, chi~> vanishes")]
    ZeroNormalizer,

    #[error("chain exhausted with invariance residual {residual:e} above threshold {threshold:e}")]
    NotConverged { residual: f64, threshold: f64 },

    #[error("H6 violated: (e_t * e_t^)({{e}}) = {value} at t = {point}")]
    H6Violation { point: usize, value: f64 },

    #[error("invariance system has null-space dimension {dim}, expected 1")]
    DegenerateNullspace { dim: usize },

    #[error("invariant solution has negative weight {value} at point {point}")]
    NegativeSolution { point: usize, value: f64 },

    #[error("invalid shrinking chain: {0}")]
    InvalidChain(String),

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid family spec: {0}")]
    InvalidFamily(String),

    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),

    #[error("line {line}: syntax error: {msg}")]
    Syntax { line: usize, msg: String },

    #[error("line {line}: {what} {value} out of range (n = {n})")]
    Range {
        line: usize,
        what: &'static str,
        value: usize,
        n: usize,
    },

    #[error("line {line}: duplicate entry c {s} {t} {u}")]
    DuplicateEntry {
        line: usize,
        s: usize,
        t: usize,
        u: usize,
    },
}

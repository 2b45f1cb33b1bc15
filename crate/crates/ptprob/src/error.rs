use thiserror::Error;

/// Crate-wide error type. Variants are grouped by cause: structural
/// mismatches, invalid numeric arguments, undefined quantities, and
/// iteration failures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two objects that must share a universe do not.
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    /// A vector of per-point values has the wrong length.
    #[error("length mismatch for {what}: expected {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// Universe construction failed (duplicate ids, ragged coordinates, empty).
    #[error("invalid universe: {0}")]
    InvalidUniverse(String),

    /// Probability mass is negative, non-finite, or does not sum to 1.
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    /// A transition probability matrix fails its row/column constraints.
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    /// A truth-function parameter or value is out of range.
    #[error("invalid truth function: {0}")]
    InvalidTruthFunction(String),

    /// A scalar argument is out of its documented range.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A universe point has no numeric coordinate but one is required.
    #[error("point {id:?} has no coordinate of dimension {expected}")]
    MissingCoordinate { id: String, expected: usize },

    /// Conditioning on an event of probability zero.
    #[error("cannot condition on {what}: its probability is zero")]
    ZeroProbabilityEvent { what: String },

    /// A label that is never produced (all-zero row / zero prior mass).
    #[error("label {label:?} has zero probability everywhere")]
    UnusedLabel { label: String },

    /// A likelihood places mass where the prior has none, so no truth
    /// function can reproduce it.
    #[error("likelihood has mass at zero-prior point index {index}")]
    SupportViolation { index: usize },

    /// Every candidate label falsified the observation.
    #[error("point index {index} is falsified by every label")]
    Unclassifiable { index: usize },

    /// A confirmation measure whose defining ratio is 0/0.
    #[error("measure {measure} is undefined for these counts")]
    UndefinedMeasure { measure: &'static str },

    /// Labelled sample is empty or refers to unknown points/labels.
    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// A fixed-point or search iteration failed to converge.
    #[error("no convergence after {sweeps} sweeps (residual {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    /// Two quantities that must agree by construction drifted apart,
    /// which indicates a numerically pathological input.
    #[error("{what} identity violated: residual {residual:.3e}")]
    IdentityViolation { what: &'static str, residual: f64 },

    /// A compound-label expression failed to parse or evaluate.
    #[error("bad expression: {0}")]
    Expression(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("slope {0} is outside the open chart (0,1)")]
    SlopeOutOfRange(f64),

    #[error("slope sequence is not strictly monotone at index {index}")]
    NonMonotone { index: usize },

    #[error("sequence needs at least {needed} elements, got {got}")]
    SequenceTooShort { needed: usize, got: usize },

    #[error("limit witness {v_inf} lies inside the sequence range [{lo}, {hi}]")]
    WitnessInsideRange { v_inf: f64, lo: f64, hi: f64 },

    #[error("limit witness {v_inf} is on the wrong side: sequence does not tend toward it")]
    WitnessWrongSide { v_inf: f64 },

    #[error(
        "geometric ratio {0} is outside (1/3, 1/2); the two-sided lacunary \
         condition fails at or beyond these endpoints"
    )]
    RatioOutOfRange(f64),

    #[error("inserted run leaves its host gap ({lo}, {hi}) at level {level}")]
    RunOutsideGap { level: usize, lo: f64, hi: f64 },

    #[error("inserted run at level {level} in gap ({lo}, {hi}) is not 1-lacunary (pair {pair})")]
    RunNotLacunary {
        level: usize,
        lo: f64,
        hi: f64,
        pair: usize,
    },

    #[error("certificate chain is empty")]
    EmptyChain,

    #[error("duplicate slope {0}")]
    DuplicateSlope(f64),

    #[error("kernel parameters invalid: r = {r}, R = {big_r} must satisfy 0 <= r < R/2")]
    BadKernelParams { r: f64, big_r: f64 },

    #[error("window width must be positive, got {0}")]
    BadWindowWidth(f64),

    #[error("Fejer radius must be positive, got {0}")]
    BadFejerRadius(f64),

    #[error("cut radii need positive nonincreasing interval lengths (index {index})")]
    BadChainLengths { index: usize },

    #[error("grid dimension {0} must be a power of two >= 16")]
    BadGridDim(usize),

    #[error("grid samples must all be finite")]
    NonFiniteSample,

    #[error("grid sample count {got} does not match n^2 = {expected}")]
    BadSampleCount { got: usize, expected: usize },

    #[error("physical side length must be positive, got {0}")]
    BadSideLength(f64),

    #[error("bad grid file: {0}")]
    GridFormat(String),

    #[error("slope interval requires 0 < a < b < 1, got [{a}, {b}]")]
    BadInterval { a: f64, b: f64 },

    #[error("degenerate sector: interval endpoints coincide")]
    DegenerateSector,

    #[error("scale list must be nonempty")]
    EmptyScales,

    #[error("direction set must be nonempty")]
    EmptyDirections,

    #[error("theta {0} is not a member of the certified set")]
    ThetaNotInSet(f64),

    #[error("set has no certificate; build or certify one first")]
    MissingCertificate,

    #[error("interval chain violates the gap-distance condition at level {level}")]
    ChainCondition { level: usize },

    #[error("interval chain is not nested at level {level}")]
    ChainNotNested { level: usize },

    #[error("theta {theta} is outside interval {level} of the chain")]
    ThetaOutsideChain { theta: f64, level: usize },

    #[error("no gap interval available at level {level}")]
    ChainUnavailable { level: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("support containment failed for split piece {piece} at frequency ({k1}, {k2})")]
    SupportViolation { piece: usize, k1: i64, k2: i64 },

    #[error("scalar chain bound h*r_(k+1)*min-dist = {value} exceeds 4 at level {level}")]
    ScalarBoundViolation { level: usize, value: f64 },

    #[error("invalid experiment config: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

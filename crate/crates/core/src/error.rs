use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("unknown router `{0}`")]
    UnknownRouter(String),

    #[error("width mismatch: expected {expected} bits, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    #[error("invalid bit pattern `{0}`")]
    InvalidPattern(String),

    #[error("invalid property: {0}")]
    InvalidProperty(String),

    #[error("{what} needs {requested} bits/qubits, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("qubit index {index} out of range for width {width}")]
    QubitOutOfRange { index: usize, width: usize },

    #[error("gate on qubit {0} lists it as both control and target")]
    ControlOverlap(usize),

    #[error("reset of qubit {0} projects onto a zero-norm state")]
    ZeroNormReset(usize),

    #[error("probability {0} must lie strictly between 0 and 1")]
    InvalidProbability(f64),

    #[error("solution count {k} out of range 1..=2^{n}")]
    SolutionCount { n: usize, k: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by a problem exceeding a configured size ceiling.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

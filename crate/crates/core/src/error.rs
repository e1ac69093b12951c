use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace {0} is not 1")]
    TraceNotOne(f64),

    #[error("matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),

    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("elapsed time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("qubit index {index} out of range for a {num_qubits}-qubit register")]
    QubitOutOfRange { index: usize, num_qubits: usize },

    #[error("mean drift condition violated: 1/lambda_e = {inter_arrival} <= {service} summed stage means")]
    Unstable { inter_arrival: f64, service: f64 },

    #[error("invalid waiting-time distribution: {0}")]
    InvalidDistribution(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("no samples to estimate from")]
    EmptySamples,

    #[error("singular linear system")]
    Singular,
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

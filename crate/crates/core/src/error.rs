use thiserror::Error;

pub type Result<T> = std::result::Result<T, QiopaError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QiopaError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "cutoff {cutoff} too small for gain {gain}: boundary occupancy {occupancy:.3e}; \
         try a cutoff of at least {suggested}"
    )]
    CutoffTooSmall {
        cutoff: usize,
        gain: f64,
        occupancy: f64,
        suggested: usize,
    },

    #[error("cutoff {required} required for gain {gain} exceeds the oracle cap {cap}")]
    CutoffInfeasible { gain: f64, required: usize, cap: usize },

    #[error("not converged: {0}")]
    Unconverged(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("grid of {requested} samples exceeds the cap of {cap}")]
    GridTooLarge { requested: usize, cap: usize },

    #[error("invalid axis partition: {0}")]
    InvalidPartition(String),

    #[error("quadrature order {order} is below the exactness threshold {minimum}")]
    QuadratureOrder { order: usize, minimum: usize },
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported matrix dimension {0} (only 2 and 4 are supported)")]
    UnsupportedDimension(usize),

    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("density matrix has eigenvalue {value:e} below tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochOutOfRange { norm: f64 },

    #[error("logarithm argument {0:e} is not positive")]
    NonPositiveLogArgument(f64),

    #[error("Kraus operators violate completeness by {deviation:e}")]
    KrausCompleteness { deviation: f64 },

    #[error("no closed form available for the {0} model")]
    NoClosedForm(crate::model::InteractionKind),

    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
}

impl Error {
    pub(crate) fn param(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on an argument does not hold.
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    /// The argument lies inside the removable-singularity band around a
    /// positive integer where the requested formula keeps its singular terms.
    #[error("x = {x} lies within {delta} of the integer {m}; use the integer-limit form (m = {m}) instead")]
    GuardBand { x: f64, m: u64, delta: f64 },

    #[error("tolerance {requested:e} is unattainable: {reason}")]
    UnattainableTolerance { requested: f64, reason: String },

    #[error("Bernoulli table holds indices up to {available}, but {required} is needed")]
    TableTooSmall { required: usize, available: usize },

    #[error("index {index} is outside the table range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("unknown tail family `{0}`")]
    UnknownFamily(String),

    #[error("quadrature did not reach {target:e} within {points} points (last estimate {estimate:e})")]
    QuadratureNotConverged {
        target: f64,
        points: usize,
        estimate: f64,
    },

    /// An internal self-consistency check failed.
    #[error("consistency check `{check}` failed: residual {residual:e} exceeds {allowed:e}")]
    Inconsistent {
        check: &'static str,
        residual: f64,
        allowed: f64,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}

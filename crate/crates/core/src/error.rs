use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A statistic whose definition divides by zero (e.g. Mandel Q of the vacuum).
    #[error("undefined statistic: {0}")]
    UndefinedStatistic(String),

    /// A quantity that must be real came out with a non-negligible imaginary part.
    #[error("internal inconsistency in {quantity}: imaginary residue {residue:e} exceeds {limit:e}")]
    Inconsistent {
        quantity: &'static str,
        residue: f64,
        limit: f64,
    },

    #[error("truncation error: tail mass {tail:e} at cutoff {cutoff} exceeds {limit:e}")]
    Truncation { cutoff: usize, tail: f64, limit: f64 },

    #[error("cutoff {cutoff} insufficient: {reason}")]
    CutoffInsufficient { cutoff: usize, reason: String },

    #[error("capacity exceeded: need {required}, maximum is {max}")]
    Capacity { required: usize, max: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

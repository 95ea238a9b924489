use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("argument outside its domain: {0}")]
    Domain(String),

    #[error("sample is empty")]
    EmptySample,

    #[error("sample too small: need at least {required} observations, got {actual}")]
    SampleTooSmall { required: usize, actual: usize },

    #[error("observation {index} is not a positive finite number: {value}")]
    NonPositiveObservation { index: usize, value: f64 },

    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    #[error("raw moment of order {order} does not exist (requires order < shape {shape})")]
    MomentDoesNotExist { order: u32, shape: f64 },

    #[error("series evaluation requires an integer exponent, got {0}")]
    SeriesInapplicable(f64),

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("hazard overflows: survival function underflowed to zero at t = {0}")]
    HazardOverflow(f64),

    #[error("statistic is infinite: model probability reached 0 or 1 at t = {0}")]
    InfiniteStatistic(f64),

    #[error("catastrophic cancellation: alternating sum gave {0}, outside [0, 1]")]
    Cancellation(f64),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

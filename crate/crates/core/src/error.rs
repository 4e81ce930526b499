use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FokasError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("evaluation error: {0}")]
    Evaluation(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("operation does not apply: {0}")]
    NoOp(String),
    #[error("unsupported regularity s = {s}: (2s-1)/4 is a nonnegative integer")]
    UnsupportedRegularity { s: f64 },
    #[error("iteration is not contracting: differences grew for {consecutive} consecutive steps ({history:?})")]
    NonContraction { consecutive: usize, history: Vec<f64> },
}

pub type Result<T> = std::result::Result<T, FokasError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(FokasError::Domain(msg.into()))
}

pub(crate) fn shape<T>(msg: impl Into<String>) -> Result<T> {
    Err(FokasError::Shape(msg.into()))
}

pub(crate) fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(FokasError::Config(msg.into()))
}

pub(crate) fn finite_or(value: num_complex::Complex64, what: &str) -> Result<num_complex::Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(FokasError::Evaluation(format!("non-finite value from {what}: {value}")))
    }
}

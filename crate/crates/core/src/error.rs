use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-positive argument {0}")]
    NonPositiveArgument(String),

    #[error("bad dimension: {0}")]
    BadDimension(String),

    #[error("bad derivative order {order}: the recursion starts at order 2")]
    BadOrder { order: usize },

    #[error("index {index} out of range 1..={len}")]
    BadIndex { index: usize, len: usize },

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("no sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("duplicate value {0}")]
    DistinctnessViolation(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("precision must be at least 53 bits, got {0}")]
    BadPrecision(u32),

    #[error("negative power of log t is not representable")]
    NegativeLogPower,

    #[error("parse error: {0}")]
    Parse(String),
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole: {0}")]
    Pole(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("denominator has a non-invertible constant term in `{0}`")]
    NonUnitConstantTerm(String),
    #[error("timed out after {0} ms")]
    Timeout(u64),
    #[error("exhaustive bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("regularity violated: entries {0} and {1} coincide")]
    Irregular(usize, usize),
    #[error("inadmissible Weyl element {0}")]
    Inadmissible(String),
    #[error("cell {0} is outside the evaluated range F_0..F_n")]
    UnsupportedCell(String),
    #[error("singular linear system")]
    SingularSystem,
    #[error("block out of range: {0}")]
    BlockOutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid conductor {0}: conductors must be positive")]
    InvalidConductor(u64),

    #[error("conductor {requested} exceeds the configured bound {max}")]
    ConductorOverflow { requested: u64, max: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("illegal q for n = {n}, s = {s}: {reason}")]
    IllegalQ { n: u32, s: u32, reason: String },

    #[error("a path of length {length} has no {parts}-thin split")]
    ThinSplit { length: u32, parts: u32 },

    #[error("group and ramification datum do not match: {0}")]
    MismatchedDatum(String),

    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("not a comodule: {0}")]
    NotAComodule(String),

    #[error("mismatched parameters: {0}")]
    Mismatch(String),

    #[error("structural failure: {0}")]
    Structural(String),

    #[error("no graded Majid structure on the {d}-truncated path coalgebra of Z^{n}")]
    InadmissibleTruncation { n: u32, d: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),
}

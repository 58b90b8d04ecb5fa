use thiserror::Error;

/// Crate-wide error type.
///
/// Mathematical impossibilities (unit ideal, singular linear part) and
/// resource ceilings (budget, truncation) are separate variants so the
/// resolution driver can react differently: budgets stop a run, truncation
/// shortfalls trigger a retry at a higher jet order.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVar(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("jet order {have} too small (need at least {need})")]
    TruncationTooSmall { have: i64, need: i64 },

    #[error("operation requires an exact ring: {0}")]
    ExactOnly(String),

    #[error("unit ideal: invariant undefined at this point")]
    UnitIdeal,

    #[error("linear part is not invertible")]
    SingularLinearPart,

    #[error("engine budget exceeded: {0}")]
    Budget(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("indeterminate in jet mode: {0}")]
    Indeterminate(String),

    #[error("{0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

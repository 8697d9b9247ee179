use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid element for monoid `{monoid}`: {detail}")]
    InvalidElement { monoid: String, detail: String },

    #[error("monoid mismatch: `{left}` vs `{right}`")]
    MonoidMismatch { left: String, right: String },

    /// A divisibility-only operation was requested on a monoid whose
    /// pre-order is not divisibility.
    #[error("`{op}` requires a divisibility monoid, `{monoid}` is not one")]
    Capability { op: &'static str, monoid: String },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    /// 1-based index of the first domain entry whose order constraint fails.
    #[error("order constraint fails at domain index {index}")]
    ConstraintViolation { index: usize },

    #[error("objects do not match: {0}")]
    ObjectMismatch(String),

    #[error("{candidates} candidate index functions exceed the limit of {limit}")]
    ResourceGuard { candidates: u128, limit: u128 },

    #[error("value {value} is outside the supported range (|a| <= {bound})")]
    OutOfRange { value: i128, bound: i64 },

    #[error("arithmetic overflow")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported homomorphism: {0}")]
    UnsupportedHomomorphism(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    /// A guaranteed identity failed to hold at runtime.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

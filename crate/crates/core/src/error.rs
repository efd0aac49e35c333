use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("descent exponents violate c_(i+1) = p(c_i + r_i) at index {index}")]
    RecurrenceViolation { index: usize },
    #[error("{what} out of range at index {index}: {value} not in [{lo}, {hi}]")]
    RangeViolation {
        what: &'static str,
        index: usize,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("alpha is not integral at index {index}")]
    NonIntegralAlpha { index: usize },
    #[error("inconsistent invariants: {0}")]
    InconsistentInvariants(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("no models of the given type have the given generic fibre")]
    EmptyModelSet,
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("not generic: digit {index} of the quotient character is {digit}, outside [{lo}, {hi}]")]
    NotGeneric {
        index: usize,
        digit: i64,
        lo: i64,
        hi: i64,
    },
    #[error("illegal flag: {0}")]
    IllegalFlag(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("non-integral multiplicity: {0}")]
    NonIntegralMultiplicity(String),
    #[error("wrong length for {what}: expected {expected}, got {got}")]
    Length {
        what: &'static str,
        expected: usize,
        got: usize,
    },
}

use thiserror::Error;

/// Errors produced by the number-theoretic routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or non-canonical number syntax. `column` is 1-based.
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A partial quotient does not fit the `u64` quotient representation.
    #[error("partial quotient {0} exceeds the supported range")]
    QuotientOverflow(String),

    /// Exact tails need an eventually periodic (or finite) expansion.
    #[error("tail is not exactly representable for a stream-backed expansion; use interval mode")]
    TailNotExact,

    #[error("stream horizon exhausted: quotient {requested} requested, only {horizon} known")]
    HorizonExhausted { requested: usize, horizon: usize },

    #[error("equivalence is undecidable for stream-backed expansions")]
    EquivalenceUndecidable,

    #[error("precision unreachable: {0}")]
    PrecisionUnreachable(String),

    #[error("the number is rational; an irrational input is required")]
    NotIrrational,

    #[error("sum or difference of the two numbers is an integer")]
    SumOrDifferenceInteger,

    #[error("both numbers are equivalent to the golden ratio")]
    BothEquivalentToTau,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no letter Q^{0} in the word")]
    NoSuchLetter(usize),

    #[error("no admissible (U, V) with |U| <= {bound}")]
    SearchBoundExceeded { bound: u64 },

    #[error("the X sequence has no window X_(k-1) < X_k with both terms positive")]
    NoPositiveWindow,

    #[error("target constant out of range: {0}")]
    TargetOutOfRange(String),

    #[error("constructed pair is degenerate: {0}")]
    DegeneratePair(String),
}

impl Error {
    pub(crate) fn syntax(column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            column,
            message: message.into(),
        }
    }

    /// True for errors caused by inputs that violate a documented precondition.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::InvalidArgument(_)
                | Error::NotIrrational
                | Error::SumOrDifferenceInteger
                | Error::BothEquivalentToTau
                | Error::Precondition(_)
                | Error::NoSuchLetter(_)
                | Error::TargetOutOfRange(_)
                | Error::TailNotExact
                | Error::EquivalenceUndecidable
        )
    }

    /// True for errors caused by running out of precision or stream data.
    pub fn is_precision(&self) -> bool {
        matches!(
            self,
            Error::PrecisionUnreachable(_) | Error::HorizonExhausted { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

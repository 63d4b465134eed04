//! Error type shared by every engine in the crate.

use crate::list::OrdinalPosition;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// How a caller should treat a failure.
///
/// `Input` failures mean the request itself was malformed or referenced
/// something that does not exist. `Refusal` failures mean the request was
/// well formed but the engine declined to run it, for example because the
/// evidence window was too small to be meaningful or the work would exceed
/// the configured budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Refusal,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    // digit expansions
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("digit {digit} is not a valid digit in base {base}")]
    DigitOutOfBase { digit: u8, base: u32 },
    #[error("base {0} is outside the supported range 2..=36")]
    UnsupportedBase(u32),
    #[error("expansion equals one and has no representation below one")]
    ValueReachesOne,
    #[error("digit positions are one-based; position 0 is out of domain")]
    PositionZero,
    #[error("denominator must be nonzero")]
    ZeroDenominator,
    #[error("rational {value} lies outside [0, 1)")]
    RationalNotBelowOne { value: String },
    #[error("cannot parse digit notation at byte {at}: {message}")]
    Notation { at: usize, message: String },

    // list construction and access
    #[error("list alphabet must contain at least two digits")]
    AlphabetTooSmall,
    #[error("duplicate list entry at {first} and {second}: {value}")]
    DuplicateEntry {
        first: OrdinalPosition,
        second: OrdinalPosition,
        value: String,
    },
    #[error("digit {digit} of entry at {position}, column {column}, is outside the list alphabet")]
    AlphabetViolation {
        position: OrdinalPosition,
        column: u64,
        digit: u8,
    },
    #[error("entry at {position} uses base {found} but the list uses base {expected}")]
    BaseMismatch {
        position: OrdinalPosition,
        expected: u32,
        found: u32,
    },
    #[error("limit position omega+{index} is out of range; the tail has {len} entries")]
    LimitOutOfRange { index: u64, len: usize },
    #[error("explicit generator table has {len} entries; index {index} is out of range")]
    TableExhausted { index: u64, len: usize },
    #[error("validation horizon {given} is too small; need at least {required}")]
    ValidationHorizonTooSmall { given: u64, required: u64 },
    #[error("invalid generator: {message}")]
    InvalidGenerator { message: String },
    #[error("the generator can emit digit {digit}, which is outside the list alphabet")]
    GeneratorAlphabet { digit: u8 },
    #[error("the generator embeds an expansion in base {found}, but the list uses base {expected}")]
    GeneratorBase { expected: u32, found: u32 },

    // diagonal rules and streams
    #[error("diagonal rule maps digit {0} to itself; rules must be fixed point free")]
    RuleFixedPoint(u8),
    #[error("diagonal rule does not cover digit {0} of the alphabet")]
    RuleIncomplete(u8),
    #[error("diagonal rule maps digit {from} to {to}, which is outside the alphabet")]
    RuleEscapesAlphabet { from: u8, to: u8 },
    #[error("stream horizon {given} is too small for this list; need at least {required}")]
    HorizonTooSmall { given: u64, required: u64 },

    // census
    #[error("finite strings are limited to {max} digits; got {got}")]
    StringTooLong { got: u32, max: u32 },
    #[error("string set is empty")]
    EmptyStringSet,
    #[error("string set mixes lengths {first} and {second}")]
    MixedStringLengths { first: u8, second: u8 },
    #[error("string set repeats the element {0}")]
    DuplicateString(String),
    #[error("census needs at least {needed} elements (the digit count); the set has {got}")]
    SetSmallerThanDigits { got: usize, needed: usize },
    #[error("diagonal of a prefix needs exactly {expected} rows of that length; {message}")]
    BadPrefixShape { expected: usize, message: String },
    #[error("exhaustive census over {orderings} orderings exceeds the budget of {budget}; use prefix or sampled mode")]
    CensusBudgetExceeded { orderings: String, budget: String },
    #[error("sampled census needs at least one sample")]
    NoSamples,

    // numerosity
    #[error("count profiles need n_max of at least 1")]
    EmptyCountWindow,
    #[error("comparison window n_max = {given} is too small; need at least {required} for any verdict")]
    EvidenceWindowTooSmall { given: u64, required: u64 },
    #[error("cannot compare profiles with windows {left} and {right}; they must match")]
    WindowMismatch { left: u64, right: u64 },
    #[error("residue class needs a modulus of at least 1")]
    ZeroModulus,

    // definition files
    #[error("line {line}: unexpected token '{token}': {message}")]
    Definition {
        line: usize,
        token: String,
        message: String,
    },
    #[error("no {kind} named '{name}' is defined")]
    UnknownName { kind: &'static str, name: String },
    #[error("'{0}' is neither a built-in preset nor a readable definition file")]
    UnknownTarget(String),
    #[error("cannot read '{path}': {message}")]
    FileRead { path: String, message: String },
}

impl Error {
    /// Classify the failure for exit-code purposes.
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::ValidationHorizonTooSmall { .. }
            | Error::HorizonTooSmall { .. }
            | Error::CensusBudgetExceeded { .. }
            | Error::EvidenceWindowTooSmall { .. } => ErrorKind::Refusal,
            _ => ErrorKind::Input,
        }
    }
}

use thiserror::Error;

/// Crate-wide error type.
///
/// Every failure is a violated precondition of some operation; the messages are
/// written to be printable as-is by a CLI. [`Error::is_malformed_input`]
/// separates "the input could not even be read" failures from domain errors,
/// which is the distinction the CLI's exit codes draw.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational from {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: String },

    #[error("slope-group generators must be integers >= 2, got {value}")]
    BadSlopeGenerator { value: u64 },

    #[error("slope-group generator list is empty")]
    EmptySlopeSet,

    #[error("proportionality test against the zero vector is undefined")]
    ZeroVector,

    #[error("a piecewise-linear map needs at least two breakpoints, got {count}")]
    TooFewPoints { count: usize },

    #[error("breakpoint {coord}-coordinates must be strictly increasing (violated at index {index})")]
    NonMonotone { coord: char, index: usize },

    #[error("interval mismatch: expected [{expected_lo}, {expected_hi}], found [{found_lo}, {found_hi}]")]
    IntervalMismatch {
        expected_lo: String,
        expected_hi: String,
        found_lo: String,
        found_hi: String,
    },

    #[error("{op} requires a self-map (domain [{lo}, {hi}] and codomain [{colo}, {cohi}] differ)")]
    NotSelfMap {
        op: &'static str,
        lo: String,
        hi: String,
        colo: String,
        cohi: String,
    },

    #[error("argument {x} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain { x: String, lo: String, hi: String },

    #[error("cannot restrict to [{lo}, {hi}]: {reason}")]
    BadRestriction { lo: String, hi: String, reason: String },

    #[error("extension interval [{lo}, {hi}] does not contain the map's interval")]
    BadExtension { lo: String, hi: String },

    #[error("interval endpoint {x} does not lie in the break module")]
    EndpointNotInModule { x: String },

    #[error("map is not a group member: {diagnosis}")]
    NotAMember { diagnosis: String },

    #[error("the zero character is rejected here")]
    ZeroCharacter,

    #[error("exponent pair (0, 0) is rejected: it would build the identity, which has empty support")]
    ZeroExponentPair,

    #[error("support anchor r = {r} must lie strictly between 0 and 1")]
    AnchorOutOfRange { r: String },

    #[error("invalid builder configuration: {reason}")]
    BadConfig { reason: String },

    #[error("exponents ({a}, {b}) are not coprime")]
    NotCoprime { a: i64, b: i64 },

    #[error("interval length {value} must be a positive element of the break module")]
    BadLength { value: String },

    #[error("generator list must contain a non-identity element")]
    AllIdentity,
}

impl Error {
    /// True for failures that mean the input text itself was unreadable, as
    /// opposed to a well-formed input that violates a precondition.
    pub fn is_malformed_input(&self) -> bool {
        matches!(self, Error::ParseRational { .. })
    }
}

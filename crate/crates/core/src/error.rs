use thiserror::Error;

use crate::coeff::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("cover relations contain a cycle through `{0}` and `{1}`")]
    CycleDetected(String, String),

    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("`{0}` is not invertible")]
    NotInvertible(String),
    #[error("cannot parse `{text}` as an element of {ring}")]
    ParseError { ring: RingSpec, text: String },
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("invalid ring specification: {0}")]
    InvalidRing(String),

    #[error("`{0}` and `{1}` are not comparable")]
    NotComparable(String, String),
    #[error("operands live over different {0}")]
    Mismatch(&'static str),

    #[error("invalid basis pair: {0}")]
    InvalidPair(String),
    #[error("inconsistent antisymmetry at B({left}, {right})")]
    InconsistentAntisymmetry { left: String, right: String },
    #[error("bracket is not an antisymmetric biderivation: {0}")]
    NotABiderivation(String),
    #[error("sigma is not constant on chains: {0}")]
    NotChainConstant(String),
    #[error("{0} is not a field")]
    NotAField(RingSpec),
    #[error("B({left}, {right}) is not a scalar multiple of the commutator")]
    NotProportional { left: String, right: String },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("sigma map does not cover the strict pairs: {0}")]
    InvalidSigma(String),
    #[error("bijection violated: {0}")]
    BijectionViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

use crate::rat::Rat;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),

    #[error("{0} is not a discriminant (must be nonzero and 0 or 1 mod 4)")]
    NotDiscriminant(i64),

    #[error("negative argument {0} passed to Cohen number H(r, N)")]
    NegativeCohenArgument(Rat),

    #[error("series is not invertible: lowest coefficient is zero or series is empty")]
    NotInvertible,

    #[error("inexact Laurent division at q-order {0}")]
    InexactDivision(Rat),

    #[error("operation requires integral q- and zeta-scales, found qscale {qscale}, zscale {zscale}")]
    FractionalScale { qscale: i64, zscale: i64 },

    #[error("specialized coefficient at q^{exponent} is not rational: {value}")]
    NonRational { exponent: Rat, value: String },

    #[error("root-of-unity conductor {0} exceeds the supported maximum of 48")]
    ConductorTooLarge(i64),

    #[error("cannot certify precision of specialization: {0}")]
    Uncertified(String),

    #[error("unknown identity: {0}")]
    UnknownIdentity(String),

    #[error("unknown form: {0}")]
    UnknownForm(String),

    #[error("comparison window is empty (precision {0})")]
    EmptyWindow(i64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

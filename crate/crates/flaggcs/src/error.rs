//! Crate-wide error type.

use thiserror::Error;

use crate::integrability::TripleVerdict;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown algebra designator `{0}` (expected e.g. `A2`, `G2`)")]
    BadAlgebraName(String),

    #[error("no simple Lie algebra of type {family}{rank}")]
    InvalidAlgebra { family: char, rank: usize },

    #[error("root {0} is not a simple root of the given system")]
    NotSimpleRoot(String),

    #[error("root {0} does not belong to the given system")]
    UnknownRoot(String),

    #[error("Weyl group enumeration exceeded the cap of {cap} elements ({found} found)")]
    WeylCapExceeded { cap: usize, found: usize },

    #[error("structures live on different algebras ({left} vs {right})")]
    AlgebraMismatch { left: String, right: String },

    #[error("block count {got} does not match the {expected} positive roots")]
    BlockCount { expected: usize, got: usize },

    #[error("noncomplex parameter x must be nonzero")]
    ZeroX,

    #[error("parameter at root {root} must be positive, got {value}")]
    NonPositiveParameter { root: String, value: String },

    #[error("missing parameter for root {0}")]
    MissingParameter(String),

    #[error("unexpected parameter for root {0}")]
    UnexpectedParameter(String),

    #[error("structure is not integrable; {} failing triple(s), first at {}",
            .failing.len(),
            .failing.first().map(|v| v.describe()).unwrap_or_default())]
    NotIntegrable { failing: Vec<TripleVerdict> },

    #[error("operator blocks do not commute")]
    NonCommuting,

    #[error("pair is not generalized almost Kahler (commutation or positivity fails)")]
    NotAlmostKahler,

    #[error("root {root} admits no Kahler classification: {reason}")]
    UnclassifiableRoot { root: String, reason: String },

    #[error("no Weyl element normalizes the structure (is it integrable?)")]
    NoNormalizingElement,

    #[error("noncomplex support {support:?} is not the closure of a set of simple roots")]
    SupportNotThetaClosure { support: Vec<String> },

    #[error("blocks do not cover the positive roots exactly once; missing {missing:?}, duplicated {duplicated:?}, unknown {unknown:?}")]
    RootCoverage {
        missing: Vec<String>,
        duplicated: Vec<String>,
        unknown: Vec<String>,
    },

    #[error("invalid rational literal `{0}` (expected `p` or `p/q`)")]
    InvalidRational(String),

    #[error("invalid sign `{0}` (expected 1 or -1)")]
    InvalidSign(String),

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("oracle realization requires {0}")]
    OracleDegenerate(String),

    #[error("numeric oracle supports only the {expected} family, got {got}")]
    OracleAlgebra { expected: String, got: String },

    #[error("numeric tolerance breach in {what}: |error| = {value:e}")]
    ToleranceBreach { what: String, value: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors surfaced by the library. The CLI maps these onto exit codes:
/// parse problems are "bad arguments", most of the rest are precondition
/// violations, and `ResourceCap` is its own category.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational from {input:?}")]
    ParseRational { input: String },

    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("value {value} is not {p}-integral")]
    NotPIntegral { value: String, p: u32 },

    #[error("interval [{lo}, {hi}) is not a valid sub-interval of [0, 1)")]
    InvalidInterval { lo: String, hi: String },

    #[error("endpoint {value} has a prime factor other than 2 or 3 in its denominator")]
    NotSixSmooth { value: String },

    #[error("residue {residue} is not reduced modulo {p}^{exp}")]
    BadResidue { residue: String, p: u32, exp: u32 },

    #[error("refinement exponent {requested} is below the current exponent {current}")]
    BadRefinement { current: u32, requested: u32 },

    #[error("coset exponent {exp} exceeds the supported maximum {max}")]
    ExponentTooLarge { exp: u32, max: u32 },

    #[error("direction (0, 0) is the identity and has no partition")]
    ZeroDirection,

    #[error("direction ({a}, {b}) is not expansive")]
    NotExpansive { a: i64, b: i64 },

    #[error("depth/order must be at least {min}, got {got}")]
    BadDepth { min: i64, got: i64 },

    #[error("index {index} out of range for alphabet of size {size}")]
    IndexOutOfRange { index: i64, size: u64 },

    #[error("resource cap of {cap} exceeded while {during}")]
    ResourceCap { cap: u64, during: &'static str },

    #[error("atoms do not cover the space: total measure {measure}")]
    IncompleteCover { measure: String },

    #[error("projective-limit trace is invalid: {reason}")]
    InvalidTrace { reason: String },

    #[error("cannot render an empty set")]
    EmptyRender,

    #[error("boxes overlap: {detail}")]
    OverlappingBoxes { detail: String },

    #[error("value too large for JSON number")]
    JsonNumberOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;

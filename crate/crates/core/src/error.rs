use thiserror::Error;

/// Errors reported by the engine. Structural contract violations (a vector
/// that is not weakly decreasing, say) panic at construction instead; these
/// variants cover conditions a caller can run into with well-formed inputs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("weight mismatch: partitions of {left} and {right} are incomparable")]
    WeightMismatch { left: usize, right: usize },

    #[error("set decomposition covers {{1,..,{found}}} but the partition has {expected} parts")]
    GroundMismatch { expected: usize, found: usize },

    #[error("cannot compose: codomain {inner} does not match domain {outer}")]
    ObjectMismatch { inner: String, outer: String },

    #[error("surface `{0}` carries no Hodge numbers")]
    MissingHodge(String),

    #[error("surface `{0}` is not cellular: {1}")]
    NotCellular(String, String),

    #[error("series has non-unit constant term; not invertible over the integers")]
    NonUnitConstant,

    #[error("invalid surface descriptor `{name}`: {reason}")]
    InvalidSurface { name: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

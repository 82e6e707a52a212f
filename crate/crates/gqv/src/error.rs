//! Error type shared by every module in the crate.

use thiserror::Error;

/// All failure modes of the library surface.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GqvError {
    /// Two values built over different dimension specifications were mixed.
    #[error("dimension specifications differ: {0} vs {1}")]
    SpecMismatch(String, String),

    /// Two multi-register values with different register counts were mixed.
    #[error("register counts differ: {0} vs {1}")]
    RegisterCountMismatch(usize, usize),

    /// A multiplicative inverse was requested for a non-unit.
    #[error("{0} is not a unit in the coordinate ring")]
    NotAUnit(String),

    /// A register index was outside the valid range.
    #[error("register index {index} out of range for {count} registers")]
    IndexError { index: usize, count: usize },

    /// Synthesis requires the coordinate ring to be a field.
    #[error(
        "dimension {0} is not prime; synthesis needs a prime dimension or the continuous case"
    )]
    NonPrimeDimension(u64),

    /// A tableau does not describe any Clifford unitary.
    #[error("tableau is not symplectic: {0}")]
    NonSymplectic(String),

    /// The operation is not defined for this dimension specification.
    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    /// A dense-matrix computation would exceed the supported size.
    #[error("problem size too large: {0}")]
    TooLarge(String),

    /// Malformed argument or value outside its documented domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Text input failed to parse.
    #[error("parse error at line {line}: {message}")]
    ParseError { line: usize, message: String },
}

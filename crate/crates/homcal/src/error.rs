//! Crate-wide error type.
//!
//! Fallible constructors and parsers return [`Error`]; verification
//! entry points do *not* — a failed mathematical law is reported as a
//! [`crate::report::Check`] with a witness, not as an error.

/// Errors produced by constructors, parsers, and structure validation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The expression source text is malformed; `pos` is a byte offset.
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Two values from rings with different variable lists were combined.
    #[error("ring mismatch: expected variables [{expected}], got [{got}]")]
    RingMismatch { expected: String, got: String },

    /// A variable name is not a valid identifier.
    #[error("invalid variable name {0:?}")]
    BadVariable(String),

    /// The same variable name occurs twice in a ring.
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),

    /// A substitution meant to be an affine automorphism has a nonlinear image.
    #[error("substitution is not affine: image of {var} has degree {degree}")]
    NotAffine { var: String, degree: u32 },

    /// The linear part of an affine substitution is singular.
    #[error("substitution is not invertible: its linear part is singular")]
    SingularSubstitution,

    /// Two σ-derivations (or twisted maps) with different twists were combined.
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),

    /// Vector/matrix/basis sizes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Grades of exterior values do not line up.
    #[error("grade mismatch: {0}")]
    Grade(String),

    /// A module map that must be invertible has non-unit determinant.
    #[error("matrix is not invertible over the ring: determinant is {det}")]
    NotInvertible { det: String },

    /// A structure violates a validity precondition (with explanation).
    #[error("{0}")]
    Invalid(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

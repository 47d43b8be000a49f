use thiserror::Error;

/// Errors raised by the engine. Messages carry the offending values already
/// rendered, so the type stays independent of the scalar width.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("endpoint sizes {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("modulus {0} must be at least 2")]
    BadModulus(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("objects live over different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("element is not in K0(A; G_p): {0}")]
    NotInGroup(String),
    #[error("modulus p = {p} is not a multiple of {size}")]
    ModulusNotMultiple { p: String, size: String },
    #[error("element is not in the positive cone: {0}")]
    NotPositive(String),
    #[error("residues not divisible by the endpoint sizes: {0}")]
    NotDecomposable(String),
    #[error("triple is not of torsion form: {0}")]
    NotTorsionForm(String),
    #[error("K1-multiplicity {0} is not admissible: {1}")]
    BadMultiplicity(String, String),
    #[error("torsion index {d} outside [0, {order})")]
    BadTorsionIndex { d: String, order: String },
    #[error("incompatible operands: {0}")]
    Mismatch(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    /// A runtime cross-check failed; this indicates a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },

    #[error("weights must be positive integers, got ({0}, {1})")]
    InvalidWeights(i64, i64),

    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not quasihomogeneous for weights ({w1}, {w2})")]
    NotQuasihomogeneous { w1: u32, w2: u32 },

    #[error("divisor is not a unit: its constant term vanishes")]
    NonUnit,

    #[error("expected a vanishing constant term")]
    NonzeroConstantTerm,

    #[error("invalid Poisson germ: {0}")]
    InvalidGerm(String),

    #[error("the Jacobian ideal has infinite codimension")]
    InfiniteCodimension,

    #[error("resonance at quasidegree {degree}: the component there must vanish")]
    Resonance { degree: i64 },

    #[error("not a cocycle: the coboundary is nonzero at quasidegree {degree}")]
    NotACocycle { degree: i64 },

    #[error("could not reduce component of quasidegree {degree}")]
    Unreduced { degree: i64 },

    #[error("diffeomorphism germ has a singular linear part")]
    SingularLinearPart,

    #[error("diffeomorphism germ does not fix the origin")]
    MovesOrigin,

    #[error("invalid normal-form label: {0}")]
    InvalidLabel(String),
}

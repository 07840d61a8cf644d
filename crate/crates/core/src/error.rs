use thiserror::Error;

use crate::rootsys::LatticeVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inadmissible root system {family}{rank}: {reason}")]
    Inadmissible {
        family: char,
        rank: usize,
        reason: String,
    },

    #[error("{0} is not a root")]
    NotARoot(LatticeVector),

    #[error("{0} is not dominant")]
    NotDominant(LatticeVector),

    #[error("vector has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("word {0:?} is not reduced")]
    NonReducedWord(Vec<usize>),

    #[error("{vector} does not lie in the orbit of {dominant}")]
    NotInOrbit {
        vector: LatticeVector,
        dominant: LatticeVector,
    },

    #[error("division by zero")]
    DivisionByZero,

    #[error("singular substitution: {0}")]
    SingularSubstitution(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("degenerate closing equation for orbit of {0}")]
    DegenerateClosing(LatticeVector),

    #[error("solver budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("result is not a polynomial with nonnegative integer coefficients: {0}")]
    NonPolynomial(String),

    #[error("verification failed: {0}")]
    Verification(String),
}

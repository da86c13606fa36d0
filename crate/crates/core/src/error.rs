use thiserror::Error;

/// Errors shared by the whole engine.
///
/// `solve_*` returning "no solution" is a value (`None`), not an error; the
/// variants here are contract violations by the caller or internal
/// consistency failures that indicate a convention bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("composition d_out * d_in is nonzero at entry ({0}, {1})")]
    CompositionNonzero(usize, usize),
    #[error("gcd of the vector entries is {0}, not 1")]
    GcdNotOne(String),
    #[error("bad prime {0}: {1}")]
    BadPrime(u64, String),
    #[error("bad modulus {0}: {1}")]
    BadModulus(u64, String),
    #[error("group ring modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("fraction level mismatch: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("index {0} out of range for a prime family of size {1}")]
    IndexOutOfRange(usize, usize),
    #[error("not an order ideal: {0}")]
    NotAnIdeal(String),
    #[error("differential does not split: d != d1 + d2 at entry ({0}, {1})")]
    SplitMismatch(usize, usize),
    #[error("cochain is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("cocycle lifting failed at filtration level {0}")]
    LiftFailed(i64),
    #[error("bad index pair: {0}")]
    BadIndex(String),
}

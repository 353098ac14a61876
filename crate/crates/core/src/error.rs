use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("image list is not a bijection on 0..{degree}")]
    NotABijection { degree: usize },
    #[error("group order exceeds the enumeration cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(
        "k-subset action requires n >= 2k (got n = {n}, k = {k}); pass the override to allow it"
    )]
    SubsetHypothesis { n: usize, k: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("class functions belong to different groups")]
    GroupMismatch,
    #[error("point {point} is outside the domain of size {size}")]
    PointOutOfRange { point: usize, size: usize },
    #[error("the action is not faithful (kernel of order {kernel})")]
    NotFaithful { kernel: usize },
    #[error("the action is not transitive")]
    NotTransitive,
    #[error("class function is not a character: {0}")]
    NotACharacter(String),
    #[error("class function is not a homomorphism to {{1, -1}}")]
    NotSignValued,
    #[error("character table verification failed: {0}")]
    TableVerification(String),
    #[error("Kuelshammer graph is disconnected: {0}")]
    Disconnected(String),
    #[error("<phi, chi^l> vanishes for every l <= {l_max}")]
    NoNonzeroPower { l_max: usize },
    #[error("{0}")]
    TheoremViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

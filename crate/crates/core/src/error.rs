use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("ell = {ell} divides q = {q}")]
    EllDividesQ { ell: u64, q: u64 },
    #[error("q = {0} is not a prime power greater than 1")]
    NotPrimePower(u64),
    #[error("ell = {0} is below the supported bound 5")]
    EllTooSmall(u64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not a signed permutation: {0:?}")]
    NotSignedPermutation(Vec<i32>),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("sublattice is not contained in the ambient lattice")]
    NotASublattice,
    #[error("enumeration budget exceeded ({what}: limit {limit})")]
    BudgetExceeded { what: String, limit: usize },
    #[error("no Frobenius-fixed lift of c1 exists for l = {l}, d = {d}")]
    NoFixedLift { l: usize, d: usize },
    #[error("no extension of the character exists: {0}")]
    NoExtension(String),
}

pub type Result<T> = std::result::Result<T, Error>;

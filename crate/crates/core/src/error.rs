use thiserror::Error;

/// Errors shared across the crate. Programmer errors (mixing scalars from
/// different `(p, a)` contexts, out-of-bounds indexing) panic instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p = {0} is not a prime number")]
    NotPrime(u64),
    #[error("p^a does not fit in 64 bits (p = {p}, a = {a})")]
    PrecisionOverflow { p: u64, a: u32 },
    #[error("requested level n = {n} exceeds the working precision a = {a}")]
    PrecisionExceeded { n: u32, a: u32 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not invertible at this precision")]
    NotInvertible,
    #[error("enumeration would visit {count} classes, above the guard of {limit}")]
    EnumerationTooLarge { count: u128, limit: u128 },
    #[error("submodule {index} has rank {rank} below the declared minimum {min}")]
    RankBelowDeclared { index: usize, rank: usize, min: usize },
    #[error("inadmissible point at this precision: submodule {index} has image rank 0")]
    InadmissiblePoint { index: usize },
    #[error("no admissible class at this level")]
    NoAdmissibleClass,
    #[error("polynomial is zero at this precision")]
    ZeroPolynomial,
    #[error("series is zero at this precision")]
    ZeroAtPrecision,
    #[error("no unit coefficient within truncation degree {degree}")]
    TruncationTooSmall { degree: u32 },
    #[error("ideal is outside the supported catalog: {0}")]
    UnsupportedIdeal(String),
    #[error("not a distinguished polynomial: {0}")]
    NotDistinguished(String),
    #[error("determinant vanishes at this precision; increase the precision or truncation")]
    IndeterminateDeterminant,
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("decomposition data is required but missing")]
    MissingDecompositionData,
    #[error("profile is outside the catalog: {0}; supply explicit inertia data")]
    UnsupportedProfile(String),
    #[error("tower is not stabilized: {0}")]
    NotStabilized(String),
    #[error("synthesized entry at layer {layer} would be negative")]
    NegativeEntry { layer: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

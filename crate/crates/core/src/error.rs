use thiserror::Error;

/// Errors raised by the digraph, linear-algebra and number-theoretic routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed digraph: {0}")]
    MalformedDigraph(String),

    #[error("digraph parse error at {position}: {message}")]
    Parse { position: String, message: String },

    #[error("morphism is not incidence-compatible: {0}")]
    NotAMorphism(String),

    #[error("morphism is not a covering map: {0}")]
    NotACover(String),

    #[error("not a group action: {0}")]
    NotAnAction(String),

    #[error("digraph is not strongly connected")]
    NotStronglyConnected,

    #[error("fiber of size {size} exceeds the deck-group search cap of {cap}")]
    FiberTooLarge { size: usize, cap: usize },

    #[error("closed-path length must be positive")]
    ZeroLength,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("zero polynomial has no Taylor data at u = 1")]
    ZeroPolynomial,

    #[error("lattice containment failed: {0}")]
    NotContained(String),

    #[error("delta = {0} is nonzero; the invariant m is undefined")]
    NonzeroDelta(u64),

    #[error("subset is not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("character does not belong to this group: {0}")]
    CharacterMismatch(String),

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("prime {p} exceeds the configured cap {cap}")]
    PrimeCapExceeded { p: u64, cap: u64 },

    #[error("{g} is not a primitive root modulo {p}")]
    NotPrimitiveRoot { g: u64, p: u64 },

    #[error("trivial character is not allowed here")]
    TrivialCharacter,

    #[error("nontrivial even character: the isotypic component is free of rank one")]
    EvenCharacter,

    #[error("hypothesis violated: {ell} divides {n}")]
    EllDividesOrder { ell: u64, n: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("precision cap {cap} exhausted while computing a valuation")]
    PrecisionCapExhausted { cap: u32 },

    #[error("internal arithmetic inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

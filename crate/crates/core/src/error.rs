use std::fmt;

/// Group axiom reported by [`Error::NotAGroup`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// The table is not square or contains out-of-range entries.
    Shape,
    /// Some row or column repeats an element.
    LatinSquare,
    Identity,
    Inverse,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Shape => "shape",
            Axiom::LatinSquare => "latin square",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not a group: {0} fails")]
    NotAGroup(Axiom),
    #[error("not a permutation of 0..{degree}: {images:?}")]
    NotAPermutation { degree: usize, images: Vec<usize> },
    #[error("order limit exceeded: {what} needs {size}, cap is {cap}")]
    OrderLimitExceeded { what: &'static str, size: usize, cap: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("domain mismatch: {0}")]
    DomainMismatch(&'static str),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("boundary maps do not compose to zero")]
    NonComposable,
    #[error("square does not commute")]
    NotCommutative,
    #[error("invalid section: {0}")]
    BadSection(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("search failed: {0}")]
    NotFound(String),
    #[error("group is not perfect")]
    NotPerfect,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invariant violated: {0}")]
    InvariantViolated(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

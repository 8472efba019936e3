use thiserror::Error;

/// Errors raised by the diagram calculus.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unbound parameter: {0}")]
    UnboundParameter(&'static str),

    #[error("q must be invertible")]
    QNotInvertible,

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("expected a square diagram or morphism, found {top} -> {bottom}")]
    NotSquare { top: usize, bottom: usize },

    #[error("expected an even arity, found {0}")]
    OddArity(usize),

    #[error("partial trace over {strands} strands exceeds arity {arity}")]
    TooManyStrands { strands: usize, arity: usize },

    #[error(
        "enumeration cap exceeded: P_{{{top},{bottom}}} has Bell({}) = {bell} diagrams, cap is arity sum {cap}",
        top + bottom
    )]
    EnumerationCap {
        top: usize,
        bottom: usize,
        bell: u128,
        cap: usize,
    },

    #[error("not in End(M_{0}): morphism is not fixed by the antisymmetrizer sandwich")]
    NotInEndMn(usize),

    #[error("morphism is not sandwiched by s_{n} on its first {n} strands")]
    NotSandwiched { n: usize },

    #[error("morphism is not idempotent")]
    NotIdempotent,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("grading mismatch: {0}")]
    Grading(String),

    #[error("specify q handling: coefficient {0} still depends on q")]
    SpecifyQHandling(String),

    #[error("oracle size cap exceeded: {labels} labelings, cap is {cap}")]
    OracleCap { labels: u128, cap: u128 },

    #[error("invalid tangle: {0}")]
    Tangle(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

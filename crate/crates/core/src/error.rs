use thiserror::Error;

/// Errors produced by the lattice pipeline.
///
/// Everything here is a hard failure: no operation ever returns a silently
/// truncated or partial result.
#[derive(Debug, Error)]
pub enum Error {
    /// The rows handed to a volume computation were linearly dependent.
    #[error("rank deficient: Gram matrix is singular")]
    RankDeficient,

    /// A quotient was requested for a pair that is not nested.
    #[error("not a sublattice: row {row} is not an integer combination of the ambient basis")]
    NotSublattice { row: usize },

    /// Sublattice of strictly smaller rank; the quotient group is infinite.
    #[error("infinite index: sublattice rank {sub} < lattice rank {sup}")]
    InfiniteIndex { sup: usize, sub: usize },

    /// Enumeration visited more search-tree nodes than the configured budget.
    #[error("enumeration node budget exceeded ({budget} nodes)")]
    BudgetExceeded { budget: u64 },

    /// Span enumeration refused: the closure may hold up to n^6 classes.
    #[error("span enumeration refused: n = {n} exceeds the configured limit {limit}")]
    SpanTooLarge { n: usize, limit: usize },

    /// Coset spectrum bound too large for the dynamic-programming table.
    #[error("coset spectrum bound {bound_sq} exceeds the limit {limit} (= 10n)")]
    SpectrumBoundTooLarge { bound_sq: u64, limit: u64 },

    /// A divisor that should have degree divisible by n did not.
    #[error("degree {degree} is not divisible by n = {n}")]
    DegreeNotMultiple { degree: i64, n: usize },

    /// A cached basis file disagrees with what was asked for.
    #[error("cache mismatch: {0}")]
    CacheMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

use alloc::vec::Vec;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("group size {0} is too small, at least two individuals are required")]
    GroupTooSmall(usize),
    #[error("variance of individual {index} is {value}, expected a finite positive number")]
    InvalidVariance { index: usize, value: f64 },
    #[error("allocation entry {index} is {value}, expected a finite nonnegative number")]
    NegativeWeight { index: usize, value: f64 },
    #[error("allocation sums to {0}, expected 1")]
    NotNormalized(f64),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("variances must be sorted ascending (violated at position {0})")]
    NotAscending(usize),
    #[error("{0:?} is not a permutation of 1..n")]
    InvalidPermutation(Vec<usize>),
    #[error("enumeration over {n}! permutations exceeds the cap of n = {cap}")]
    EnumerationCapExceeded { n: usize, cap: usize },
    #[error("select-crowd size m = {m} must satisfy 1 <= m < n = {n}")]
    InvalidCrowdSize { m: usize, n: usize },
    #[error("tolerance must be nonnegative and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("row {row} of the relative interaction matrix sums to {sum}, expected 1")]
    NotRowStochastic { row: usize, sum: f64 },
    #[error("matrix entry ({row}, {col}) is {value}, expected a finite nonnegative number")]
    InvalidMatrixEntry { row: usize, col: usize, value: f64 },
    #[error("diagonal entry {0} of the relative interaction matrix must be zero")]
    NonzeroDiagonal(usize),
    #[error("matrix has {len} entries, which is not a square of dimension {n}")]
    NotSquare { n: usize, len: usize },
    #[error("susceptibility of individual {index} is {value}, expected a value in (0, 1]")]
    InvalidSusceptibility { index: usize, value: f64 },
    #[error("all susceptibilities equal 1, at least one individual must keep some self-weight")]
    NoSelfWeight,
    #[error("interaction graph is reducible; sink components {sink_components:?}")]
    Reducible { sink_components: Vec<Vec<usize>> },
    #[error("matrix powers did not converge within 2^{0} steps")]
    NoConvergence(usize),
    #[error("adjacency entry ({row}, {col}) must be 0 or 1 and symmetric")]
    InvalidAdjacency { row: usize, col: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("network is not democratic: column {col} sums to {sum}")]
    NotDemocratic { col: usize, sum: f64 },
    #[error("network is not an autocratic star centred at {center}: {reason}")]
    NotStar { center: usize, reason: &'static str },
    #[error("Monte Carlo run needs at least {min} trials, got {actual}")]
    TooFewTrials { min: usize, actual: usize },
    #[error("allocation rule does not improve the wisdom at group size {n}")]
    RuleDoesNotImprove { n: usize },
    #[error("variance {value} exceeds the bound beta = {beta}")]
    VarianceAboveBound { value: f64, beta: f64 },
    #[error("resolution must be at least 1")]
    ZeroResolution,
    #[error("cannot parse {0:?} as a decimal number")]
    InvalidDecimal(alloc::string::String),
}

pub type Result<T> = core::result::Result<T, Error>;

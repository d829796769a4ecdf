use thiserror::Error;

/// Errors raised while building groups, actions, algebras and their representations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("product is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NonAssociative(usize, usize, usize),

    #[error("table has no two-sided identity element")]
    NoIdentity,

    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),

    #[error("unsupported builtin group parameters: {0}")]
    UnsupportedParams(String),

    #[error("element set {0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),

    #[error("invalid group action: {0}")]
    InvalidAction(String),

    #[error("character table eigenvector separation failed after {0} attempts")]
    ConvergenceFailure(usize),

    #[error("irrep splitting did not converge after {0} attempts")]
    SplittingFailure(usize),

    #[error("algebra elements belong to different actions")]
    ActionMismatch,

    #[error("representation is not an irrep of the orbit stabilizer: {0}")]
    NotStabilizerIrrep(String),

    #[error("representation is not an irrep of the centralizer: {0}")]
    NotCentralizerIrrep(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("labels do not match: {0}")]
    LabelMismatch(String),

    #[error("tensor rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("tensor rank {0} is outside the supported range 1..=3")]
    UnsupportedRank(usize),

    #[error("tensor decomposition residual {0:e} exceeds tolerance")]
    DecompositionResidual(f64),

    #[error("quadrature band limit {available} is below the required {required}")]
    BandLimitExceeded { required: usize, available: usize },

    #[error("matrix is not unimodular: det = {0}")]
    NotUnimodular(f64),

    #[error("unknown label: {0}")]
    UnknownLabel(String),
}

pub type Result<T> = std::result::Result<T, Error>;

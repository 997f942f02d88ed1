use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration has no vectors")]
    EmptyConfig,
    #[error("configuration has {0} vectors; at most 64 are supported")]
    TooManyVectors(usize),
    #[error("vector {index} has {found} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("vector {0} is zero")]
    ZeroVector(usize),
    #[error("vectors {0} and {1} are proportional")]
    Proportional(usize, usize),
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("invalid order: {0}")]
    InvalidOrder(String),
    #[error("subset is not complete")]
    NotComplete,
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("indices are not strictly increasing")]
    Unsorted,
    #[error("nested set is not proper: its minima do not form a basis")]
    NotProper,
    #[error("vector lies outside the span of the configuration")]
    OutsideSpan,
    #[error("target is not a lattice point of the span")]
    NotIntegral,
    #[error("no linear form is positive on every vector: the cone is not acute")]
    NotAcute,
    #[error("configuration is not unimodular")]
    NotUnimodular,
    #[error("the chosen chamber direction leaves the cone")]
    ChamberOutsideCone,
    #[error("target lies outside the cone")]
    OutsideCone,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("subgraph is not connected")]
    Disconnected,
    #[error("vertex weights do not sum to zero on a connected component")]
    UnbalancedWeights,
    #[error("row sums total {rows} but column sums total {cols}")]
    MarginMismatch { rows: i64, cols: i64 },
    #[error("margins must be non-negative")]
    NegativeMargin,
    #[error("margin vector has {found} entries, expected {expected}")]
    MarginLength { found: usize, expected: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

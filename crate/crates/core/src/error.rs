use thiserror::Error;

use crate::sampling::MrRunStats;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty degree sequence")]
    EmptySequence,

    #[error("invalid degree {value} at position {position}")]
    InvalidDegree { position: usize, value: i64 },

    #[error("degree {degree} is too large for {n} nodes")]
    DegreeTooLarge { degree: usize, n: usize },

    #[error("degree sequence is not graphical")]
    NotGraphical,

    #[error("node label {label} is out of range 1..={n}")]
    InvalidLabel { label: usize, n: usize },

    #[error("invalid node set: {0}")]
    InvalidSet(String),

    #[error("adjacency sets of sizes {left} and {right} are incomparable")]
    Incomparable { left: usize, right: usize },

    #[error(
        "{forbidden} forbidden nodes leave fewer than {degree} allowed neighbours among {n} nodes"
    )]
    TooManyForbidden {
        forbidden: usize,
        degree: usize,
        n: usize,
    },

    #[error("focal node has no stubs to connect")]
    NothingToReduce,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("stub-matching budget exhausted after {} restarts", stats.restarts)]
    RestartBudgetExceeded { stats: MrRunStats },

    #[error("oracle refuses {n} nodes (limit {limit})")]
    OracleTooLarge { n: usize, limit: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

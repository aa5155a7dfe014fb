use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has no edges")]
    EmptyGraph,

    /// Nodes whose `p_v` exceeds their degree; no separate chain exists.
    #[error("infeasible parameters: p_v > degree(v) at nodes {nodes:?}")]
    Infeasible { nodes: Vec<usize> },

    #[error("parameter vectors have length {got}, graph has {expected} nodes")]
    ParamLength { expected: usize, got: usize },

    #[error("initial state exceeds the degree bound at node {node} ({value} > {degree})")]
    InitAboveDegree { node: usize, value: u32, degree: u32 },

    #[error("rank vector out of bounds at node {node} ({value} > {degree})")]
    RankOutOfBounds { node: usize, value: u32, degree: u32 },

    #[error("fixed-point iteration exceeded its step budget ({decrements} decrements, {sweeps} sweeps)")]
    NonTermination { decrements: u64, sweeps: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("girth {requested} exceeds the exact girth {exact} of the graph")]
    GirthTooLarge { requested: u32, exact: u32 },

    #[error("oracle size limit exceeded: {0}")]
    OracleLimit(String),

    #[error("oracle internal error: {0}")]
    OracleInternal(String),

    #[error("unknown node label {0:?}")]
    UnknownNode(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}{hint}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
        hint: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors that indicate a bug or a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::NonTermination { .. } | Error::OracleInternal(_))
    }
}

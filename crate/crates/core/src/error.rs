use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph is not connected")]
    NotConnected,
    #[error("instance is not reduced by rule 1: {0}")]
    NotRule1Reduced(String),
    #[error("instance is not reduced")]
    NotReduced,
    #[error("subgraph has no edges")]
    EmptySubgraph,
    #[error("instance too large for path verifier (more than {cap} s-t paths)")]
    PathCapExceeded { cap: usize },
    #[error("{what}: size {size} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("vertex set is not a feedback vertex set; cycle {cycle:?} survives")]
    NotFeedbackSet { cycle: Vec<usize> },
    #[error("element {0} is not covered by any set")]
    Uncoverable(usize),
    #[error("range {0} is empty")]
    EmptyRange(usize),
    #[error("hitting set search did not converge")]
    DidNotConverge,
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("r must be at least 3, got {0}")]
    InvalidR(usize),
    #[error("method requires unit weights")]
    RequiresUnitWeights,
    #[error("tracker set is not a tracking set")]
    NotTrackingSet,
    #[error("no s-t path has the given tracker sequence")]
    NoSuchPath,
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// True for the errors produced by size guards.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::PathCapExceeded { .. } | Error::CapExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

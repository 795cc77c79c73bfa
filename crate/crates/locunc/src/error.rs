use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point id {id} out of range (universe has {len} points)")]
    InvalidPoint { id: usize, len: usize },
    #[error("graph is disconnected; metric closure undefined")]
    DisconnectedMetric,
    #[error("metric axiom violated: {0}")]
    MetricViolation(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("cap exceeded: {what} (limit {limit})")]
    CapExceeded { what: String, limit: u64 },
    #[error("edge set is not a forest")]
    NotATree,
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("scale constant K too small: need K > {threshold}, got {k}")]
    InvalidScale { k: i64, threshold: i64 },
    #[error("unsupported metric: {0}")]
    UnsupportedMetric(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown {kind} '{name}'")]
    Unknown { kind: &'static str, name: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap(what: impl Into<String>, limit: u64) -> Error {
    Error::CapExceeded { what: what.into(), limit }
}

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size limit: {what} has {got} elements, limit is {limit}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("search budget of {nodes} nodes exhausted")]
    Timeout { nodes: u64 },

    #[error("retry budget exhausted after {attempts} attempts: {context}")]
    BudgetExhausted { attempts: usize, context: String },

    #[error("hypothesis fails: {0}")]
    HypothesisFails(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("sets overlap on vertex {0}")]
    OverlappingSets(usize),

    #[error("empty vertex set")]
    EmptySet,

    #[error("internal exhaustion: candidate set for pattern vertex {vertex} emptied")]
    InternalExhaustion { vertex: usize },

    #[error("construction failed verification: {0}")]
    ConstructionFailed(String),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("alias bank exhausted at vertex {blocking}: {reason}")]
    BankExhausted { blocking: usize, reason: String },

    #[error("clique ladder stuck at step {step}")]
    LadderStuck { step: usize },

    #[error("no tie found")]
    NoneFound,

    #[error("pipeline step `{step}` failed: {detail}")]
    StepFailed { step: String, detail: String },

    #[error("value not desk-computable: {0}")]
    Undecidable(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("cache corrupt at line {line}: {msg}")]
    CacheCorrupt { line: usize, msg: String },

    #[error("cached value mismatch for {key}: cached {cached}, recomputed {recomputed}")]
    CacheMismatch {
        key: String,
        cached: String,
        recomputed: String,
    },

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("graph has fewer than two vertices")]
    TooSmall,
    #[error("source and sink sets touch or overlap; no separating cut exists")]
    NotSeparable,
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("graph has {0} vertices, above the supported limit")]
    TooLarge(usize),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter {name}={value} is below the minimum {min}")]
    ParamTooSmall {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("family `{family}` expects {expected} parameter(s), got {got}")]
    WrongArity {
        family: String,
        expected: usize,
        got: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("ell must be at least 1")]
    BadEll,
    #[error("vertex {0} has no neighbors")]
    IsolatedVertex(usize),
    #[error("terminals are spread over several components of G - x")]
    TerminalsDisconnected,
    #[error("iteration cap {0} exceeded")]
    IterationCapExceeded(usize),
    #[error("s and t are at distance {0}, need at least 2")]
    TooClose(usize),
    #[error("invalid cut sequence: {0}")]
    InvalidCutSequence(String),
    #[error("invalid path system: {0}")]
    InvalidPathSystem(String),
    #[error("invalid Steiner tree: {0}")]
    InvalidTree(String),
    #[error("no exchange applies")]
    NoExchangeApplicable,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

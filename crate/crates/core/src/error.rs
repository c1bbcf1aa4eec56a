use thiserror::Error;

/// Errors raised by the analysis routines, the `.sdg` parser and the
/// verification harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("order {n} exceeds the supported maximum of {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("vertex {vertex} is out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate arc {tail} -> {head}")]
    DuplicateArc { tail: usize, head: usize },
    #[error(
        "arcs {tail} -> {head} given with both signs; a sign pattern cannot hold parallel arcs"
    )]
    OppositeParallelArcs { tail: usize, head: usize },
    #[error("pattern contains an ambiguous entry where a pure sign pattern is required")]
    NotPure,
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
    #[error("digraph is not primitive")]
    NotPrimitive,
    #[error("signed digraph is powerful")]
    Powerful,
    #[error("digraph has no cycle")]
    Acyclic,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("sign policy error: {0}")]
    Policy(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal consistency failure: {0}")]
    TheoremViolation(String),
}

/// Coarse classification used to map errors onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input is well formed but the requested analysis does not apply.
    Analysis,
    /// Malformed input or arguments.
    Usage,
    /// A computed value contradicts a proven bound; indicates a bug.
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::NotStronglyConnected
            | Error::NotPrimitive
            | Error::Powerful
            | Error::Acyclic
            | Error::Policy(_) => ErrorKind::Analysis,
            Error::TheoremViolation(_) => ErrorKind::Internal,
            _ => ErrorKind::Usage,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

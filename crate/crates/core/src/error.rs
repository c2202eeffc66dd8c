use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid address: {0}")]
    InvalidAddress(String),
    #[error("malformed tree pair: {0}")]
    MalformedPair(String),
    #[error("address {0} is not a leaf")]
    NotALeaf(String),
    #[error("address {0} is not a vertex")]
    NotAVertex(String),
    #[error("address {0} cannot be resolved through the element")]
    UnresolvableAddress(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate operand: {0}")]
    DegenerateOperand(String),
    #[error("diagram has {crossings} crossings, above the cap of {cap}; simplify first or raise the cap")]
    TooManyCrossings { crossings: usize, cap: usize },
    #[error("diagram is not oriented")]
    NotOriented,
    #[error("invalid labelled tree: {0}")]
    Structure(String),
    #[error("internal consistency: {0}")]
    Consistency(String),
    #[error("{line}:{column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("coalition universe has {coalition} vertices but the graph has {graph}")]
    UniverseMismatch { coalition: usize, graph: usize },

    #[error("operation requires an unweighted graph")]
    WeightedInput,

    #[error("weights need a common scale that does not fit in 96 bits")]
    WeightRange,

    #[error("instance has {n} vertices, above the limit of {limit} for {what}")]
    TooLarge {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error(
        "instance too large for exact computation ({n} vertices, no polynomial method applies, \
         brute-force limit {limit}); use the `approx` command (FPRAS) instead"
    )]
    ExactIntractable { n: usize, limit: usize },

    #[error("method `{method}` does not apply: {reason}")]
    NotApplicable {
        method: &'static str,
        reason: String,
    },

    #[error("player {0} is already a member of the coalition")]
    PlayerInCoalition(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("singular linear system")]
    Singular,
}

pub type Result<T> = std::result::Result<T, Error>;

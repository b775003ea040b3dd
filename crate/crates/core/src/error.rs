use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid family {family}: {reason}")]
    InvalidFamily { family: String, reason: String },

    #[error("graph definition, line {line}, column {column}: {message}")]
    GraphParse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("word, column {column}: {message}")]
    WordParse { column: usize, message: String },

    #[error("invalid bond m(s{s},s{t}) = {value}")]
    InvalidBond { s: usize, t: usize, value: String },

    #[error("generator s{} out of range for a graph of rank {rank}", .generator + 1)]
    GeneratorOutOfRange { generator: usize, rank: usize },

    #[error("vertex {} out of range for a heap with {size} vertices", .vertex + 1)]
    VertexOutOfRange { vertex: usize, size: usize },

    #[error("operands live over different Coxeter graphs")]
    GraphMismatch,

    #[error("heap of {word} is not the heap of a fully commutative element")]
    NotFullyCommutative { word: String },

    #[error("s{} and s{} are not adjacent in the Coxeter graph", .s + 1, .t + 1)]
    NotAdjacent { s: usize, t: usize },

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("c-basis postcondition failed for c[{word}]: coefficient {coefficient} at t[{term}]")]
    CBasisPostcondition {
        word: String,
        term: String,
        coefficient: String,
    },

    #[error("polynomial parse error at column {column}: {message}")]
    PolyParse { column: usize, message: String },
}

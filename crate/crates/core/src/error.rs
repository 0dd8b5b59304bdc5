use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("arity mismatch at path {path:?}: {left} wires vs {right} wires")]
    ArityMismatch {
        path: Vec<usize>,
        left: usize,
        right: usize,
    },
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` takes real parameters, unsupported by the {1} backend")]
    ParamsUnsupported(String, &'static str),
    #[error("{0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("cannot place generator: {0}")]
    UnplaceableGenerator(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("rule `{rule}` does not match: {reason}")]
    NoMatch { rule: String, reason: String },
    #[error("path {0:?} does not address a subterm")]
    BadPath(Vec<usize>),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("rule `{rule}` fails semantic verification on {backend}: lhs = {lhs}, rhs = {rhs}")]
    SemanticMismatch {
        rule: String,
        backend: String,
        lhs: String,
        rhs: String,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("search budget exhausted after {0} nodes")]
    BudgetExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("index n = {0} is invalid, need n >= 3")]
    InvalidIndex(usize),

    #[error("leaf index {index} out of range for a tree with {leaves} leaves")]
    LeafIndex { index: usize, leaves: usize },

    #[error("no vertex at address {0}")]
    NoVertex(String),

    #[error("pattern does not match at address {0}")]
    NoMatch(String),

    #[error("move budget of {0} exhausted")]
    MoveBudget(usize),

    #[error("operation requires type {expected}, element has type {found}")]
    TypeTag { expected: String, found: String },

    #[error("permutation of a type {tag} element is not allowed: {msg}")]
    BadPermutation { tag: String, msg: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("elements live in different categories (n = {0} vs n = {1})")]
    ContextMismatch(usize, usize),

    #[error("transducer stalls: a cycle emits no output")]
    Stalling,

    #[error("not a right vine: {0}")]
    NotAVine(String),

    #[error("element does not fix the circle point 0")]
    NotFixingZero,

    #[error("generator index {i} out of range 0 < i < {n}")]
    GeneratorIndex { i: usize, n: usize },

    #[error("trace replay failed at move {index}: {msg}")]
    Replay { index: usize, msg: String },
}

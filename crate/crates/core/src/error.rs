use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("invalid branch decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("vertex set is not a clique")]
    NotAClique,
    #[error("graph has an independent set of size three")]
    AlphaTooLarge,
    #[error("vertex count {0} is not divisible by 3")]
    WrongOrder(usize),
    #[error("graph on {vertex_count} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { vertex_count: usize, limit: usize },
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(u64),
    #[error("ground set of size {0} is odd")]
    OddGroundSet(usize),
    #[error("no pairing in the concentration event after {0} tries")]
    RejectionExhausted(u64),
    #[error("pairing has {available} graph edges, {needed} needed")]
    NotEnoughEdges { available: usize, needed: usize },
    #[error("nonpositive denominator in {0}")]
    NonpositiveDenominator(&'static str),
    #[error("hypothesis violated: {0}")]
    InvalidHypotheses(&'static str),
    #[error("argument outside the domain: {0}")]
    DomainError(&'static str),
    #[error("pipeline ineligible: {0}")]
    Ineligible(String),
    #[error("seagull partition failed on the leftover set: {0}")]
    SeagullFailure(String),
    #[error("not certifiable: {0}")]
    NotCertifiable(String),
    #[error("unknown generator name `{0}`")]
    UnknownName(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

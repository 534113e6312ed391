use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(usize),

    #[error("field order {q} exceeds the configured bound {bound}")]
    FieldTooLarge { q: usize, bound: usize },

    #[error("field axiom check failed for q = {q}: {what}")]
    FieldAxiom { q: usize, what: String },

    #[error("invalid partition {0:?}: parts must be positive and non-increasing")]
    InvalidPartition(Vec<usize>),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not nilpotent")]
    NotNilpotent,

    #[error("matrix is not in Jordan form for {0}")]
    NotJordan(String),

    #[error("matrix does not commute with the nilpotent element")]
    NotInCommutant,

    #[error("matrix does not stabilise the point")]
    NotStabiliser,

    #[error("matrix is not symplectic")]
    NotSymplectic,

    #[error("endomorphism is not in the exotic cone (nilpotent and <yu,u> = 0 for all u)")]
    NotInN0,

    #[error("singular block supplied for Levi factor {h} (1-based)")]
    SingularBlock { h: usize },

    #[error("wrong number or size of Levi blocks: {0}")]
    BadAssignment(String),

    #[error("inexact polynomial division while computing {0}")]
    InexactDivision(String),

    #[error("negative unipotent dimension for {0}")]
    NegativeDimension(String),

    #[error("search exceeded budget of {budget} states")]
    BudgetExceeded { budget: usize },

    #[error("state of {digits} base-{q} digits does not fit a 128-bit key")]
    StateTooWide { digits: usize, q: usize },

    #[error("point lies in no representative orbit (classification bug)")]
    Unclassified,

    #[error("symplectic completion system for {0} is {1}")]
    Completion(String, &'static str),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

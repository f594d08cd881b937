use thiserror::Error;

/// Errors raised by the library. Verification *failures* are not errors:
/// they come back as reports with `passed == false` and witnesses.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid diagram type {family}{rank}")]
    InvalidDiagram { family: String, rank: usize },

    #[error("cannot parse diagram spec {0:?} (expected e.g. \"A3\", \"D5\", \"E8\")")]
    DiagramSpec(String),

    #[error("cannot parse pair spec {0:?} (expected e.g. \"A3xA2\")")]
    PairSpec(String),

    #[error("root vector {0:?} is not a positive root or a negative simple root")]
    NotInRootSet(Vec<i64>),

    #[error("d-vector undefined for node {node} at u = {u}: parity mismatch")]
    DVectorParity { node: usize, u: i64 },

    #[error("index-set mismatch: {left} vs {right} variables")]
    IndexMismatch { left: usize, right: usize },

    #[error("numeric overflow while evaluating {context}; retry with an assignment closer to 1")]
    NumericOverflow { context: String },

    #[error("invalid assignment: {0}")]
    InvalidAssignment(String),

    #[error("value {0} outside the domain [0, 1] of the Rogers dilogarithm")]
    DilogDomain(f64),

    #[error("symbolic budget exceeded: rank product {rank_product} > {budget} (raise it with --budget-rr or YSYSLAB_BUDGET_RR)")]
    BudgetExceeded { rank_product: usize, budget: usize },

    #[error("invalid u-range [{u_min}, {u_max}]: must contain 0")]
    InvalidRange { u_min: i64, u_max: i64 },

    #[error("u = {u} outside the frame range [{u_min}, {u_max}]")]
    OutOfRange { u: i64, u_min: i64, u_max: i64 },

    #[error("backend failure at ({i}, {ip}) u = {u}: {message}")]
    Backend {
        i: usize,
        ip: usize,
        u: i64,
        message: String,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("({i}, {ip}) at u = {u} does not satisfy the parity condition P+")]
    NotPositiveParity { i: usize, ip: usize, u: i64 },

    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

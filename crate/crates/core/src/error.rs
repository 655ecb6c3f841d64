use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A configured enumeration cap would be exceeded.
    #[error("resource limit exceeded at {stage}: {detail}")]
    ResourceLimit { stage: String, detail: String },

    #[error("not a lattice: {a} and {b} have no {missing}")]
    NotALattice { a: String, b: String, missing: &'static str },

    #[error("not distributive: a={a}, b={b}, c={c} violate a∧(b∨c) = (a∧b)∨(a∧c)")]
    NotDistributive { a: String, b: String, c: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A structure that should satisfy a law by construction does not.
    #[error("law violated: {0}")]
    Violation(String),

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn resource(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::ResourceLimit { stage: stage.into(), detail: detail.into() }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

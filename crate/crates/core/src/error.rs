use thiserror::Error;

use crate::hypergraph::{EdgeId, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid instance: {}", join_violations(.0))]
    Invalid(Vec<Violation>),

    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),

    #[error("{algorithm} cannot run on this instance: {reason}")]
    ModeMismatch {
        algorithm: &'static str,
        reason: String,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("reduction soundness violated: group {group} selects edges {first} and {second}")]
    GroupConflict {
        group: usize,
        first: EdgeId,
        second: EdgeId,
    },

    #[error("edges {0} and {1} are not disjoint")]
    NotDisjoint(EdgeId, EdgeId),

    #[error("{what}: {size} exceeds the cap of {cap}; use bounds instead")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("LP solve failed: {0}")]
    Lp(String),

    #[error("certificate is missing {0}")]
    MissingDuals(String),

    #[error("replay diverges at arrival {index}: {detail}")]
    ReplayMismatch { index: usize, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl Error {
    pub(crate) fn from_json(err: serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

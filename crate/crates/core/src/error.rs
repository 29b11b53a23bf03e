use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("decomposition of V^{{⊗{arity}}} incomplete: components span {found} of {expected} dimensions")]
    DecompositionIncomplete {
        arity: usize,
        found: usize,
        expected: usize,
    },
    #[error("no component of spin {spin} (occurrence {occurrence}) in V^{{⊗{arity}}}")]
    NoSuchComponent {
        arity: usize,
        spin: u32,
        occurrence: usize,
    },
    #[error("highest components fail to complement the ideal at weight {weight}: {detail}")]
    BasisDeficiency { weight: i32, detail: String },
    #[error("degree {requested} exceeds the configured bound {max}")]
    DegreeOverflow { requested: usize, max: usize },
    #[error("unexpected dimension {found} (expected {expected}) for {what}")]
    UnexpectedDimension {
        what: String,
        found: usize,
        expected: usize,
    },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("solution not unique: {0}")]
    NonUnique(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

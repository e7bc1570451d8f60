use thiserror::Error;

/// Errors produced while building graphs, types, sequents and rule instances.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("node `{node}` occurs twice in {context}")]
    DuplicateNodeInSequence { node: String, context: String },
    #[error("arity mismatch in {context}: expected {expected}, found {found}")]
    ArityMismatch {
        context: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown node `{0}`")]
    UnknownNode(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate identifier `{0}`")]
    DuplicateId(String),
    #[error("fusing would merge distinct attachment nodes `{0}` and `{1}`")]
    FusionCollision(String, String),
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("invalid sequent: {0}")]
    InvalidSequent(String),
    #[error("succedent is not a division type")]
    NotDivision,
    #[error("edge `{0}` is not labeled by a product type")]
    NotProduct(String),
    #[error("cut edge `{0}` is not labeled by the cut formula")]
    LabelMismatch(String),
    #[error("invalid rule witness: {0}")]
    InvalidWitness(String),
    #[error("primitive `{0}` is reserved for the translation gadgets")]
    ReservedPrimitiveClash(String),
    #[error("graph is not in the image of the translation: {0}")]
    NotInImage(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arity(context: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::ArityMismatch {
            context: context.into(),
            expected,
            found,
        }
    }

    pub(crate) fn from_json(err: &serde_json::Error) -> Self {
        Error::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}

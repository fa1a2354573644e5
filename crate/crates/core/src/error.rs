use thiserror::Error;

/// Errors raised while building or analysing extruded frameworks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("fixed set {set} contains point vertex `{vertex}`")]
    FixedSetContainsPoint { set: usize, vertex: String },

    #[error("extrusion order {order} does not match {given} fixed sets")]
    FixedSetCount { order: usize, given: usize },

    #[error("word `{word}` of vertex `{base}` is incompatible with the extrusion structure")]
    BadWord { base: String, word: String },

    #[error("zero extrusion direction (index {0})")]
    ZeroDirection(usize),

    #[error("direction {direction} and hyperplane `{hyperplane}` disagree with fixed set membership")]
    ContainmentMismatch { direction: usize, hyperplane: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("hyperplane `{0}` has a zero normal")]
    ZeroNormal(String),

    #[error("parallel constraints are only supported for d <= 3 (got d = {0})")]
    UnsupportedParallelDimension(usize),

    #[error("affine map is singular")]
    SingularMap,

    #[error("framework has no point vertex")]
    NoPointVertex,

    #[error("configuration does not affinely span the ambient space")]
    NotSpanning,

    #[error("no hyperplane contains an extrusion direction")]
    NoContainedHyperplane,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("framework is not extrusion symmetric: {0}")]
    SymmetryBroken(String),

    #[error("numeric inconsistency: {0}")]
    Numeric(String),

    #[error("configuration is outside the affine subspace (residual {0:.3e})")]
    OutsideSubspace(f64),

    #[error("document error: {0}")]
    Document(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    /// Broad category used by front ends to pick an exit status.
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse { .. } | Error::Document(_) => ErrorCategory::Input,
            Error::Numeric(_) => ErrorCategory::Numeric,
            _ => ErrorCategory::Precondition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Input,
    Precondition,
    Numeric,
}

pub type Result<T> = std::result::Result<T, Error>;

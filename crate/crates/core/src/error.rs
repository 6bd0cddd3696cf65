use thiserror::Error;

/// Errors raised by construction, I/O and the precondition gates of the
/// closure-map machinery.
///
/// Mathematical checks that merely fail (an invalid category, a map that is
/// not a trisp closure map) are reported through report structs carrying
/// witnesses. An `Error` means the input could not be processed at all, or a
/// hard precondition of an operation was violated.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("trisp is not regular: simplex {simplex} in dimension {dim} repeats a vertex")]
    NotRegular { dim: usize, simplex: usize },

    #[error("lifting guaranteed only for abstract simplicial complexes")]
    NotSimplicial,

    #[error("objects {0} and {1} have parallel morphisms; not a poset")]
    ParallelMorphisms(usize, usize),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error(
        "action is not horizontal: element {element} moves object {object} to a comparable object"
    )]
    NotHorizontal { element: usize, object: usize },

    #[error("condition R fails: {0}")]
    ConditionR(String),

    #[error("condition C fails: {0}")]
    ConditionC(String),

    #[error("not equivariant: {0}")]
    NotEquivariant(String),

    #[error("not a trisp closure map: {0}")]
    NotClosureMap(String),

    #[error("not a one-sided closure operator: {0}")]
    NotClosureOperator(String),

    #[error("category has no terminal (or, dually, initial) object")]
    NoTerminalObject,

    #[error("stage {stage} failed: {source}")]
    Stage { stage: String, source: Box<Error> },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

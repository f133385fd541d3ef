use thiserror::Error;

/// Errors raised by graph construction and the algebraic operations built on it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("edge `{edge}` refers to undeclared vertex `{vertex}`")]
    UndeclaredVertex { edge: String, vertex: String },
    #[error("edge `{0}` has zero multiplicity")]
    ZeroMultiplicity(String),
    #[error("malformed id `{0}`")]
    MalformedId(String),
    #[error("edge `{0}` has infinite multiplicity; this operation needs a finite edge set")]
    InfiniteMultiplicity(String),
    #[error("vertex sets do not match for composition")]
    VertexSetMismatch,
    #[error("map sends `{from}` to `{to}`, which is not a declared point")]
    MapOutsidePoints { from: String, to: String },
    #[error("map is undefined at `{0}`")]
    MapUndefined(String),
    #[error("level mismatch: expected {expected}, got {found}")]
    LevelMismatch { expected: usize, found: usize },
    #[error("bad levels: {0}")]
    BadLevels(String),
    #[error("length mismatch: expected {expected} values, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("operator mixes paths with different domains; it is not adjointable on the module")]
    NotModuleOperator,
    #[error("Fock space dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("function is supported at `{0}`, which is not a regular vertex")]
    NotRegularSupport(String),
    #[error("gauge parameter has modulus {0}, expected 1")]
    NotUnitModulus(f64),
    #[error("graph is not the graph of a dynamical system: {0}")]
    NotDynamicalSystem(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown id `{0}`")]
    UnknownId(String),
    #[error("missing operator for `{0}`")]
    MissingOperator(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("family file: {0}")]
    FamilyFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;

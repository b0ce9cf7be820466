use crate::report::ValidationReport;

#[derive(Debug, thiserror::Error)]
pub enum VineError {
    #[error("invalid vine: {0}")]
    InvalidVine(ValidationReport),
    #[error("invalid vine matrix: {0}")]
    InvalidMatrix(ValidationReport),
    #[error("matrix does not encode a vine: {0}")]
    NotAVineMatrix(ValidationReport),
    #[error("irregular cherry tree sequence: {0}")]
    IrregularCherry(ValidationReport),
    #[error("irregular cherry tree: no leaf cluster has a private variable")]
    NoPrivateVariable,
    #[error("not a perfect elimination ordering of the vine")]
    NotVinePeo,
    #[error("ordering does not cover exactly the graph's vertices")]
    VertexMismatch,
    #[error("no perfect elimination ordering")]
    NotChordal,
    #[error("{what} must be between {min} and {max}, got {got}")]
    OutOfBounds {
        what: &'static str,
        min: usize,
        max: usize,
        got: usize,
    },
    #[error("structure corrupt: {0}")]
    StructureCorrupt(String),
    #[error(transparent)]
    Parse(#[from] crate::io::ParseError),
}

pub type Result<T, E = VineError> = std::result::Result<T, E>;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// No admissible partner edge was left for a small cycle.
    #[error("surgery-stuck: no admissible partner for edge {{{a},{b}}} of color {color}")]
    SurgeryStuck { color: usize, a: usize, b: usize },

    #[error("plant-impossible: {0}")]
    PlantImpossible(String),

    /// Encoder ran out of code points or delimiters.
    #[error("construction exhausted: {0}")]
    Exhausted(String),

    #[error("no monochromatic {k}-dimensional affine subspace of F_{p}^{n}")]
    NoMonochromaticSubspace { p: u32, n: usize, k: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

use crate::geometry::QVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("cone is not pointed: it contains the line spanned by {line}")]
    NotPointed { line: QVector },

    #[error("cone is not generating: every ray lies in the hyperplane with normal {normal}")]
    NotGenerating { normal: QVector },

    #[error("capacity exceeded: {what} = {found} exceeds limit {limit}")]
    Capacity {
        what: &'static str,
        found: usize,
        limit: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("cover check failed: {0}")]
    Cover(String),

    #[error("search budget exhausted: {0}")]
    Budget(String),
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}

use thiserror::Error;

/// Errors shared by all workbench modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("composition mismatch: codomain of `{inner}` is not the domain of `{outer}`")]
    CompositionMismatch { inner: String, outer: String },

    #[error("category `{category}` does not support {needs}")]
    UnsupportedStructure { category: String, needs: String },

    #[error("resource bound exceeded while {what}: {detail}")]
    ResourceBound { what: String, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("sort error: {0}")]
    Sort(String),

    #[error("malformed data: {0}")]
    Malformed(String),
}

impl Error {
    pub fn unsupported(category: impl Into<String>, needs: impl Into<String>) -> Self {
        Error::UnsupportedStructure { category: category.into(), needs: needs.into() }
    }

    pub fn resource(what: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::ResourceBound { what: what.into(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

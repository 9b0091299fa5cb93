use std::fmt;

/// Failures surfaced by the harness, split by exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HlxError {
    /// Bad flags, unreadable files, malformed recipes.
    Usage(String),
    /// The algebra layer rejected an input or a check failed.
    Math(String),
}

impl HlxError {
    pub fn usage(msg: impl Into<String>) -> Self {
        HlxError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            HlxError::Usage(_) => 2,
            HlxError::Math(_) => 1,
        }
    }
}

impl fmt::Display for HlxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HlxError::Usage(m) => write!(f, "usage error: {m}"),
            HlxError::Math(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for HlxError {}

impl From<hlx_core::Error> for HlxError {
    fn from(e: hlx_core::Error) -> Self {
        HlxError::Math(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, HlxError>;

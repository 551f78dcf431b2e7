use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed record: {field}: {message}")]
    Malformed { field: &'static str, message: String },

    #[error("edges[{index}]: endpoint {endpoint} out of range [0, {n})")]
    EndpointOutOfRange { index: usize, endpoint: i64, n: usize },

    #[error("edges[{index}]: self-loop on vertex {vertex}")]
    SelfLoop { index: usize, vertex: usize },

    #[error("edges[{index}]: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { index: usize, u: usize, v: usize },

    #[error("labels: expected {expected} labels, found {found}")]
    LabelCount { expected: usize, found: usize },

    #[error("root: missing root field")]
    MissingRoot,

    #[error("root: {root} out of range [0, {n})")]
    RootOutOfRange { root: i64, n: usize },

    #[error("pattern is disconnected")]
    DisconnectedPattern,

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("root label mismatch: {left} vs {right}")]
    RootLabelMismatch { left: u32, right: u32 },

    #[error("size guard: {what} has {size}, limit is {limit}")]
    Guard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("count overflow while computing {context}")]
    Overflow { context: String },

    #[error("internal: {0}")]
    Internal(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn overflow(context: impl Into<String>) -> Self {
        Error::Overflow {
            context: context.into(),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping line annotations.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtLine { source, .. } => source.root_cause(),
            other => other,
        }
    }

    /// True for errors that signal a tripped resource limit rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self.root_cause(), Error::Guard { .. } | Error::Overflow { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::fmt;

use crate::word_graph::NodeId;
use crate::Letter;

/// A failure while reading a presentation file or an element literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number, or 0 when the input has no line structure.
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("letter {letter} is out of range for an alphabet of size {alphabet_size}")]
    LetterOutOfRange {
        letter: Letter,
        alphabet_size: usize,
    },

    #[error("alphabet size {0} is outside the supported range 1..=64")]
    AlphabetSize(usize),

    #[error("node {0} is not an active node")]
    InactiveNode(NodeId),

    #[error("node {node} already has an edge labelled {letter}")]
    DuplicateEdge { node: NodeId, letter: Letter },

    #[error("node limit of {0} active nodes reached")]
    NodeLimit(usize),

    #[error("step limit of {0} primitive steps reached")]
    StepLimit(u64),

    #[error("word graph is not complete")]
    NotComplete,

    #[error("invalid letter order: {0}")]
    InvalidOrder(String),

    #[error("malformed start graph: {0}")]
    MalformedStart(String),

    #[error("enumeration did not complete")]
    Incomplete,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("element limit of {0} exceeded")]
    ElementLimit(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

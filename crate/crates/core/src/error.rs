use std::io;

use thiserror::Error;

use crate::transducer::StateId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state {state} already has a transition on input symbol {label}")]
    DuplicateInput { state: StateId, label: u32 },

    #[error("unknown state {0}")]
    UnknownState(StateId),

    #[error("the transducer accepts no input")]
    EmptyLanguage,

    #[error("state {0} cannot reach a final state")]
    NotCoaccessible(StateId),

    #[error("input epsilon transition from state {0}")]
    InputEpsilon(StateId),

    #[error("not subsequential: {0}")]
    NonSubsequential(String),

    #[error("ambiguity exceeds p = {p} ({found} distinct outputs)")]
    AmbiguityExceeded { p: usize, found: usize },

    #[error("empty lexicon")]
    EmptyLexicon,

    #[error("end marker {0} already present in the input alphabet")]
    MarkerCollision(String),

    #[error("malformed end-marker encoding: {0}")]
    MalformedEncoding(String),

    #[error("input is not a prefix of any accepted word")]
    PrefixNotPresent,

    #[error("reverse application exceeded its budget of {0} steps")]
    SearchBudgetExceeded(usize),

    #[error("depth limit {0} reached on a cyclic transducer")]
    CyclicUnsupported(usize),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("bad magic number")]
    BadMagic,

    #[error("unsupported format version {0:?}")]
    VersionMismatch(String),

    #[error("truncated file")]
    TruncatedFile,

    #[error("corrupt binary data: {0}")]
    Corrupt(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }
}

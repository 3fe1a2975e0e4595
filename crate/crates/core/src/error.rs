//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A corpus record failed to parse or validate. Line numbers are 1-based.
    #[error("corpus record on line {line}: {message}")]
    MalformedRecord { line: usize, message: String },

    #[error("duplicate document id {0:?}")]
    DuplicateDocumentId(String),

    #[error("document {id:?}: year {year} outside supported range {min}..={max}")]
    YearOutOfRange {
        id: String,
        year: i32,
        min: i32,
        max: i32,
    },

    #[error("unknown topical division {0:?}")]
    UnknownDivision(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("vocabulary empty at min_count {0}")]
    EmptyVocabulary(u64),

    #[error("undefined cosine: zero vector")]
    ZeroVector,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("term {0:?} not in vocabulary")]
    OutOfVocabulary(String),

    #[error("word list {list:?} is empty after vocabulary filtering (slice {slice:?})")]
    EmptyWordList { list: String, slice: String },

    #[error("degenerate effect size: association values have zero variance")]
    DegenerateEffectSize,

    #[error("bootstrap unstable: {degenerate} of {iterations} iterations degenerate")]
    BootstrapUnstable {
        degenerate: usize,
        iterations: usize,
    },

    #[error("all seed terms of {0:?} are out of vocabulary")]
    AllSeedsOutOfVocabulary(String),

    #[error("name pipeline stage {stage:?} left no candidates for {list:?}")]
    EmptyStage { stage: String, list: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("embedding file {path} at byte {offset}: {message}")]
    MalformedEmbedding {
        path: PathBuf,
        offset: u64,
        message: String,
    },

    #[error("{path} record {record}: {message}")]
    MalformedCsv {
        path: PathBuf,
        record: u64,
        message: String,
    },

    #[error("phrase dictionary {path} line {line}: {message}")]
    MalformedDictionary {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl Error {
    /// Wrap an IO error with the path it occurred on.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

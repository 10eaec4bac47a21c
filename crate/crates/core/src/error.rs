use thiserror::Error;

/// Errors raised by array construction, analysis and search.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty position list")]
    EmptyInput,
    #[error("duplicate sensor position {0}")]
    DuplicatePosition(u32),
    #[error("array needs at least {required} sensors, got {actual}")]
    TooFewSensors { required: usize, actual: usize },
    #[error("spacing at index {0} is not positive")]
    NonPositiveSpacing(usize),
    #[error("no spacing value repeats consecutively")]
    NoRepeatedRun,
    #[error("{0} is not a sensor position of the array")]
    NotASensor(u32),
    #[error("candidate index {index} out of range (stage has {count} candidates)")]
    IndexOutOfRange { index: u64, count: u128 },
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

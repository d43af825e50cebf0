use std::io;

use thiserror::Error;

/// Which checksum failed while loading a tensor image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    Header,
    State,
    Trailer,
}

impl std::fmt::Display for Section {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Section::Header => f.write_str("header"),
            Section::State => f.write_str("state"),
            Section::Trailer => f.write_str("trailer"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("outside the domain of the formula: {0}")]
    Domain(String),

    #[error("state of {requested} bytes exceeds the memory cap of {cap} bytes")]
    Capacity { requested: u128, cap: u64 },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("unknown word `{0}`")]
    UnknownWord(String),

    #[error("bad magic bytes {0:?}, not a tensor image")]
    BadMagic([u8; 4]),

    #[error("unsupported format version {0}")]
    Version(u32),

    #[error("image truncated while reading {0}")]
    Truncated(&'static str),

    #[error("{0} checksum mismatch")]
    Checksum(Section),

    #[error("malformed image: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to decode {path}: {message}")]
    Decode { path: PathBuf, message: String },

    #[error("failed to encode {path}: {message}")]
    Encode { path: PathBuf, message: String },

    #[error("unsupported pixel format in {path}: {format} (only 8-bit channels are accepted)")]
    UnsupportedFormat { path: PathBuf, format: String },

    #[error("image has a zero dimension ({width}x{height})")]
    ZeroDimension { width: usize, height: usize },

    #[error("pixel buffer length {actual} does not match {width}x{height}")]
    BufferSize {
        width: usize,
        height: usize,
        actual: usize,
    },

    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("histogram is empty")]
    EmptyHistogram,

    #[error("angle list is empty")]
    EmptyAngles,

    #[error("mask has no foreground pixels")]
    EmptyMask,

    #[error("frame sequence is empty")]
    EmptySequence,

    #[error("expected {expected} frames, got {actual}")]
    FrameCount { expected: usize, actual: usize },

    #[error("no input files matched {0}")]
    NoInput(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

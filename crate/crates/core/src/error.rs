use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("unsupported bit depth (maxval {0})")]
    UnsupportedBitDepth(u32),

    #[error("unsupported image format: {0}")]
    UnsupportedFormat(String),

    #[error("image has zero pixels")]
    EmptyImage,

    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("degenerate histogram: {0} needs two populated classes")]
    Degenerate(&'static str),

    #[error("histogram did not become bimodal within {0} smoothing passes")]
    NotBimodal(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("empty output fuzzy set")]
    EmptyOutput,

    #[error("empty training set")]
    EmptyTrainingSet,

    #[error("rule base is empty")]
    EmptyRuleBase,

    #[error("degenerate image: every threshold method failed")]
    DegenerateImage,

    #[error("all-zero reference signal")]
    ZeroReference,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short stable tag used in machine-readable CLI error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io { .. } => "io",
            Error::MalformedHeader(_) => "malformed_header",
            Error::UnsupportedBitDepth(_) => "unsupported_bit_depth",
            Error::UnsupportedFormat(_) => "unsupported_format",
            Error::EmptyImage => "empty_image",
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::Degenerate(_) => "degenerate",
            Error::NotBimodal(_) => "not_bimodal",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::EmptyOutput => "empty_output",
            Error::EmptyTrainingSet => "empty_training_set",
            Error::EmptyRuleBase => "empty_rule_base",
            Error::DegenerateImage => "degenerate_image",
            Error::ZeroReference => "zero_reference",
            Error::Parse { .. } => "parse",
        }
    }
}

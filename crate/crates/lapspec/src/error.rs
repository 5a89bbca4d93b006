use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph order {0} exceeds the representation limit of {max}", max = crate::graph::MAX_ORDER)]
    OrderLimit(usize),

    #[error("invalid parameter for family {family}: {reason}")]
    InvalidFamily { family: String, reason: String },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid spectral target: {0}")]
    InvalidTarget(String),

    #[error("parse error at position {pos}: {reason}")]
    Parse { pos: usize, reason: String },

    #[error("{target} is not Laplacian realizable ({reasons})")]
    NotRealizable { target: String, reasons: String },

    #[error("{target}: construction route depends on an open conjecture ({detail})")]
    ConjectureDependent { target: String, detail: String },

    #[error("{target}: realizability is not settled by the structure theorems; run an exhaustive search instead")]
    Unclassified { target: String },

    #[error("order {0} exceeds the enumeration cap of {1}; rerun with long runs enabled")]
    EnumerationCap(usize, usize),

    #[error("cache I/O failure at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

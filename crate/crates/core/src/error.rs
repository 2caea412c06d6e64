//! Error type shared across the library.

use thiserror::Error;

/// Errors reported by exact linear algebra, handle construction and the
/// verification/transfer machinery.
#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unknown basis key `{key}` for {context}")]
    UnknownKey { key: String, context: String },

    #[error("malformed basis key {key}: {detail}")]
    InvalidKey { key: String, detail: String },

    #[error("exponent {exponent} leaves the window [{lo}, {hi}]")]
    WindowOverflow { exponent: i64, lo: i64, hi: i64 },

    #[error("antipode unavailable for {name}: {reason}")]
    AntipodeUnavailable { name: String, reason: String },

    #[error("{name} admits no antipode: {detail}")]
    NotHopf { name: String, detail: String },

    #[error("incompatible handles: {0}")]
    HandleMismatch(String),

    #[error("`{symbol}` is not invertible, so the table is not a group: {detail}")]
    NotAGroup { symbol: String, detail: String },

    #[error("invalid table: {0}")]
    InvalidTable(String),

    #[error("{name} is not graded; {operation} requires a graded handle")]
    NotGraded { name: String, operation: String },

    #[error("{name} is not connected; {operation} requires a connected handle")]
    NotConnected { name: String, operation: String },

    #[error("{name} is not cocommutative; {operation} requires a cocommutative handle")]
    NotCocommutative { name: String, operation: String },

    #[error("{name} is not of finite type; {operation} requires a finite basis")]
    NotFiniteType { name: String, operation: String },

    #[error("missing table entry: {0}")]
    MissingEntry(String),

    #[error("rank deficit at degree {degree}: achieved {achieved} of {required}")]
    RankDeficit {
        degree: u32,
        achieved: usize,
        required: usize,
    },

    #[error("element is not primitive: defect {defect}")]
    NotPrimitive { defect: String },

    #[error("character is not multiplicative: {detail}")]
    NotMultiplicative { detail: String },

    #[error("defining sum diverges at `{key}` within the inspection bound")]
    Divergent { key: String },

    #[error("identification span is not a coideal: {detail}")]
    NotCoideal { detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

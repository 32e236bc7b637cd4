//! Error type shared across the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An element was used with a group it does not belong to.
    #[error("group mismatch: {0}")]
    SpecMismatch(String),

    /// An enumeration, closure, or search exceeded its configured cap.
    #[error("size limit exceeded: {what} needs {requested}, cap is {limit}")]
    SizeLimit {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate index: {0}")]
    DegenerateIndex(String),

    /// `galois_map` requires the exponent to be a unit modulo the order.
    #[error("the map z -> z^{t} is not invertible modulo {n}")]
    NonInvertibleMap { t: i64, n: u64 },

    /// A character that is not principal on the modulus cannot be induced
    /// on the quotient.
    #[error("character cannot be induced: {0}")]
    NotInducible(String),

    /// Fourier inversion was handed character sums that do not come from
    /// any integer-coefficient element.
    #[error("inconsistent spectrum: {0}")]
    InconsistentSpectrum(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

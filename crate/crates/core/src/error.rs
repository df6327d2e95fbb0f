use thiserror::Error;

use crate::spectrum::Unavailable;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("negative spectral value {0}")]
    NegativeValue(f64),

    #[error("{what} requires a nonempty list")]
    EmptyList { what: &'static str },

    #[error(
        "kernel is ambiguous: zero tolerance {zero_tol} reaches the positive eigenvalue {value}"
    )]
    AmbiguousKernel { zero_tol: f64, value: f64 },

    #[error("multiplicities are unknown for a spectrum that is not pure point")]
    MultiplicityUnknown,

    #[error("spectrum is not complete below its cutoff {cutoff}")]
    Incomplete { cutoff: f64 },

    #[error("lambda {lambda} is not below the completeness cutoff {cutoff}")]
    BeyondCutoff { lambda: f64, cutoff: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Bessel evaluation outside the accuracy envelope: order {order}, argument {x}")]
    BesselEnvelope { order: u32, x: f64 },

    #[error("no sign change found for zero {k} of J_{order} within the scan budget")]
    BracketNotFound { order: u32, k: u32 },

    #[error("Bessel zero interlacing violated at order {order}, rank {k}")]
    Interlacing { order: u32, k: u32 },

    #[error("cutoff exceeds the Bessel envelope; limiting zero is j_({order},{k})")]
    CutoffBeyondEnvelope { order: u32, k: u32 },

    #[error("{message} (at {pointer})")]
    Schema { pointer: String, message: String },

    #[error("q = {q} is out of range for {n} factors")]
    DegreeOutOfRange { q: usize, n: usize },

    #[error("factor {factor}: {message}")]
    Factor { factor: usize, message: String },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix order {order} exceeds the limit {limit}")]
    OrderTooLarge { order: usize, limit: usize },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("{0}")]
    Unavailable(Unavailable),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

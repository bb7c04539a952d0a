//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong while building, evaluating or running a model.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Frequency at or beyond the waveguide band edge, where the group velocity vanishes.
    #[error("frequency {omega} lies outside the open band ({lower}, {upper})")]
    BandEdge { omega: f64, lower: f64, upper: f64 },

    /// The coupled region does not fit in the waveguide.
    #[error("layout error: {0}")]
    Layout(String),

    /// Evaluation at a resonator mode frequency, where the effective potential diverges.
    #[error("frequency {omega} coincides with resonator mode at {mode}")]
    Pole { omega: f64, mode: f64 },

    /// A dense linear solve failed.
    #[error("singular system: {0}")]
    Singular(String),

    /// An initial state does not fit on the lattice.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// The propagator lost more norm than the configured budget allows.
    #[error("norm drift {drift:e} exceeded tolerance {tolerance:e} at t = {time}")]
    Tolerance {
        drift: f64,
        tolerance: f64,
        time: f64,
    },

    /// A parameter is outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Malformed configuration text.
    #[error("parse error at line {line}{}: {message}", key.as_ref().map(|k| format!(", key `{k}`")).unwrap_or_default())]
    Parse {
        line: usize,
        key: Option<String>,
        message: String,
    },

    /// Well-formed configuration with inconsistent or missing values.
    #[error("validation error: {0}")]
    Validation(String),

    /// Filesystem failure while writing outputs.
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use std::path::PathBuf;

use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("point ({x}, {y}) lies outside the field domain")]
    Domain { x: f64, y: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate metric: conformal factor {rho:e} is below tolerance {tol:e}")]
    DegenerateMetric { rho: f64, tol: f64 },

    #[error("Gauss map undefined: both spinor components vanish")]
    UndefinedGaussMap,

    #[error("spectral parameter {lambda} sits on the pole 2i*lambda - mu = 0 (mu = {mu})")]
    Pole { lambda: Complex64, mu: f64 },

    #[error("integration failed at x = {x}: {reason}")]
    Integration { x: f64, reason: String },

    #[error("evolution blew up after t = {last_good_t}")]
    BlowUp { last_good_t: f64 },

    #[error("{0}")]
    Usage(String),

    #[error("unknown format '{0}'")]
    UnknownFormat(String),

    #[error("malformed input in {path}: {reason}")]
    Parse { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by the numbers rather than by the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateMetric { .. }
                | Error::UndefinedGaussMap
                | Error::Integration { .. }
                | Error::BlowUp { .. }
        )
    }
}

use std::path::PathBuf;

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error(
        "quadrature did not converge after {evaluations} evaluations \
         (partial value {partial:?}, error estimate {abs_error:.3e}){context}"
    )]
    Convergence {
        partial: Vec<Complex64>,
        abs_error: f64,
        evaluations: usize,
        /// Extra diagnostic, e.g. the located plasmon pole.
        context: String,
    },

    #[error("ODE step size underflow at t = {time} (step {step:.3e})")]
    Stiffness { time: f64, step: f64 },

    #[error("integration error at t = {time}: {message}")]
    Integration { time: f64, message: String },

    #[error("source and observation points coincide; use coincidence_im_green for the self term")]
    Coincidence,

    #[error(
        "hbar*omega = 2 E_F exactly at T = 0 puts the interband conductivity on its \
         logarithmic singularity; add a finite temperature or detune omega"
    )]
    LogSingularity,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{scenario}: {source}")]
    Scenario {
        scenario: String,
        #[source]
        source: Box<Error>,
    },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Process exit code used by the `simulate` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 2,
            Error::Io { .. } => 4,
            Error::Scenario { source, .. } => source.exit_code(),
            _ => 3,
        }
    }
}

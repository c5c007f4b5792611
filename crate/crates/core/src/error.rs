use std::fmt;

use thiserror::Error;

/// Broad failure class, used to pick a process exit code and an FFI status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Numerical,
    Io,
}

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-domain input.
    #[error("invalid input: {0}")]
    Input(String),

    /// A measure that fails the admissibility checks; one entry per offending item.
    #[error("measure validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),

    #[error("{what} must satisfy {requirement}, got {value}")]
    Domain {
        what: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("target {target} not bracketed: f(lo={lo}) = {f_lo}, f(hi={hi}) = {f_hi}")]
    Bracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
        target: f64,
    },

    #[error("non-finite integrand value {value} at abscissa {abscissa}")]
    Quadrature { abscissa: f64, value: f64 },

    #[error("quadrature on [{a}, {b}] did not reach tolerance {tol} (estimate {estimate}, error {error})")]
    QuadratureTolerance {
        a: f64,
        b: f64,
        tol: f64,
        estimate: f64,
        error: f64,
    },

    #[error("power iteration did not converge after {iterations} iterations (Collatz-Wielandt bracket [{lower}, {upper}])")]
    PowerIteration {
        iterations: usize,
        lower: f64,
        upper: f64,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Input(_) | Error::Validation(_) | Error::Domain { .. } => ErrorKind::Validation,
            Error::Io { .. } => ErrorKind::Io,
            Error::Bracket { .. }
            | Error::Quadrature { .. }
            | Error::QuadratureTolerance { .. }
            | Error::PowerIteration { .. }
            | Error::Numerical(_) => ErrorKind::Numerical,
        }
    }

    pub(crate) fn numerical(msg: impl fmt::Display) -> Self {
        Error::Numerical(msg.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

//! Rigorous upper and lower bounds on the Eliashberg critical coupling Λ(P, T)
//! and critical temperature T_c(λ, P) for a normalized phonon spectral measure P.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bounds;
pub mod cli;
pub mod config;
pub mod error;
pub mod gamma_model;
pub mod measure;
pub mod numerics;
pub mod operator;
pub mod tc_solver;
pub mod verify;

pub use config::Tolerances;
pub use error::{Error, ErrorKind, Result};
pub use measure::{RawMeasure, SpectralMeasure};
pub use tc_solver::{TcEntry, TcReport, TcStatus};

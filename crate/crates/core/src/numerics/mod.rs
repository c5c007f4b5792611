//! Shared numerical kernels.

mod bisect;
mod brent;
mod eigen;
mod matrix;
mod power;
mod quadrature;
mod zeta;

pub use bisect::{bisect_monotone, try_bisect_monotone};
pub use brent::brent_root;
pub use eigen::{jacobi_eigen, sign_normalize, sym_eig_top, sym_eig_top_value, sym_eig_top_with, EigenPair};
pub use matrix::SymMatrix;
pub(crate) use matrix::{determinant_dense, norm2};
pub use power::power_iteration_positive;
pub use quadrature::integrate_adaptive;
pub use zeta::riemann_zeta;

/// Every numerical tolerance and iteration cap used by the library.
///
/// `Tolerances::default()` is what the CLI and the FFI use; callers who need
/// tighter or looser settings build their own record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest order handled by cyclic Jacobi; above it the eigensolver
    /// tridiagonalizes first.
    pub jacobi_max_order: usize,
    /// Residual contract ‖Mv − μv‖ ≤ eig_residual·(1 + |μ|).
    pub eig_residual: f64,
    pub power_tol: f64,
    pub power_max_iter: usize,
    pub quad_tol: f64,
    /// Relative tolerance on T² when inverting Λ^(N)(P, T) = λ.
    pub bisect_tol: f64,
    /// Order of the γ-model truncation standing in for the untruncated operator.
    pub gamma_reference_order: usize,
    /// Largest order tried by the converged T_c ladder.
    pub ladder_max_order: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            jacobi_max_order: 48,
            eig_residual: 1e-10,
            power_tol: 1e-12,
            power_max_iter: 100_000,
            quad_tol: 1e-10,
            bisect_tol: 1e-12,
            gamma_reference_order: 256,
            ladder_max_order: 1024,
        }
    }
}

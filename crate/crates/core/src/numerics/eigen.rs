//! Largest eigenpair of a dense real symmetric matrix.
//!
//! Two independent routes: cyclic Jacobi rotations (full decomposition, used
//! for small orders and as a cross-check) and Householder tridiagonalization
//! followed by Sturm-sequence bisection and inverse iteration, which only ever
//! extracts the top eigenpair. Both satisfy the same residual contract.

use super::matrix::{norm2, SymMatrix};
use crate::config::Tolerances;
use crate::error::{Error, Result};

/// Top eigenvalue with a unit eigenvector whose first significant component is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

impl EigenPair {
    /// ‖Mv − μv‖.
    pub fn residual(&self, m: &SymMatrix) -> f64 {
        let mv = m.mul_vec(&self.vector);
        mv.iter()
            .zip(&self.vector)
            .map(|(a, b)| (a - self.value * b).powi(2))
            .sum::<f64>()
            .sqrt()
    }
}

pub fn sym_eig_top(m: &SymMatrix) -> Result<EigenPair> {
    sym_eig_top_with(m, &Tolerances::default())
}

pub fn sym_eig_top_with(m: &SymMatrix, tol: &Tolerances) -> Result<EigenPair> {
    check_finite(m)?;
    let mut pair = if m.order() <= tol.jacobi_max_order {
        jacobi_top(m)?
    } else {
        tridiagonal_top(m)?
    };
    sign_normalize(&mut pair.vector);
    let r = pair.residual(m);
    if r > tol.eig_residual * (1.0 + pair.value.abs()) {
        return Err(Error::numerical(format!(
            "eigenpair residual {r:e} exceeds contract at order {} (value {})",
            m.order(),
            pair.value
        )));
    }
    Ok(pair)
}

/// Top eigenvalue only; skips the eigenvector work.
pub fn sym_eig_top_value(m: &SymMatrix) -> Result<f64> {
    check_finite(m)?;
    if m.order() == 1 {
        return Ok(m.get(0, 0));
    }
    let tri = Tridiagonal::reduce(m);
    Ok(tri.top_eigenvalue())
}

fn check_finite(m: &SymMatrix) -> Result<()> {
    if m.order() == 0 {
        return Err(Error::Input("empty matrix".into()));
    }
    if !m.is_finite() {
        return Err(Error::Input("matrix has non-finite entries".into()));
    }
    Ok(())
}

/// Flips the sign so the first component that is not rounding noise is positive.
pub fn sign_normalize(v: &mut [f64]) {
    let scale = v.iter().fold(0.0_f64, |a, b| a.max(b.abs()));
    if let Some(first) = v.iter().find(|x| x.abs() > 1e-12 * scale) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

// ---------------------------------------------------------------------------
// Cyclic Jacobi

/// Full eigendecomposition by cyclic Jacobi sweeps.
///
/// Returns the eigenvalues (unsorted) and the eigenvectors as columns of a
/// row-major `n × n` array.
pub fn jacobi_eigen(m: &SymMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    const MAX_SWEEPS: usize = 100;
    let n = m.order();
    let mut a = m.as_slice().to_vec();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let frob: f64 = a.iter().map(|x| x * x).sum::<f64>();
    let threshold = (f64::EPSILON * f64::EPSILON) * frob;

    for _sweep in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i * n + j].powi(2))
            .sum();
        if off <= threshold {
            let values = (0..n).map(|i| a[i * n + i]).collect();
            return Ok((values, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    Err(Error::numerical(format!(
        "Jacobi rotations did not converge in {MAX_SWEEPS} sweeps at order {n}"
    )))
}

fn jacobi_top(m: &SymMatrix) -> Result<EigenPair> {
    let n = m.order();
    let (values, vectors) = jacobi_eigen(m)?;
    let top = (0..n)
        .max_by(|&i, &j| values[i].total_cmp(&values[j]))
        .expect("non-empty");
    let mut vector: Vec<f64> = (0..n).map(|k| vectors[k * n + top]).collect();
    let norm = norm2(&vector);
    vector.iter_mut().for_each(|x| *x /= norm);
    Ok(EigenPair {
        value: values[top],
        vector,
    })
}

// ---------------------------------------------------------------------------
// Householder + Sturm bisection + inverse iteration

struct Tridiagonal {
    diag: Vec<f64>,
    /// `off[k]` couples rows `k` and `k + 1`.
    off: Vec<f64>,
    /// Unit Householder vectors; `reflectors[k]` acts on indices `k + 1..n`.
    reflectors: Vec<Option<Vec<f64>>>,
}

impl Tridiagonal {
    fn reduce(m: &SymMatrix) -> Self {
        let n = m.order();
        let mut a = m.as_slice().to_vec();
        let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
        let mut off = vec![0.0; n.saturating_sub(1)];

        for k in 0..n.saturating_sub(2) {
            let len = n - k - 1;
            let x: Vec<f64> = (k + 1..n).map(|i| a[i * n + k]).collect();
            let xnorm = norm2(&x);
            if xnorm == 0.0 {
                off[k] = 0.0;
                reflectors.push(None);
                continue;
            }
            let alpha = if x[0] > 0.0 { -xnorm } else { xnorm };
            let mut v = x;
            v[0] -= alpha;
            let vnorm = norm2(&v);
            if vnorm == 0.0 {
                off[k] = alpha;
                reflectors.push(None);
                continue;
            }
            v.iter_mut().for_each(|x| *x /= vnorm);

            // Trailing block update A ← A − v qᵀ − q vᵀ with p = 2Av, q = p − (vᵀp) v.
            let mut p = vec![0.0; len];
            for (ii, i) in (k + 1..n).enumerate() {
                let row = &a[i * n + k + 1..i * n + n];
                p[ii] = 2.0 * row.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>();
            }
            let kappa: f64 = v.iter().zip(&p).map(|(x, y)| x * y).sum();
            let q: Vec<f64> = p.iter().zip(&v).map(|(pi, vi)| pi - kappa * vi).collect();
            for (ii, i) in (k + 1..n).enumerate() {
                for (jj, j) in (k + 1..n).enumerate() {
                    a[i * n + j] -= v[ii] * q[jj] + q[ii] * v[jj];
                }
            }
            off[k] = alpha;
            reflectors.push(Some(v));
        }
        if n >= 2 {
            off[n - 2] = a[(n - 1) * n + (n - 2)];
        }
        let diag = (0..n).map(|i| a[i * n + i]).collect();
        Self {
            diag,
            off,
            reflectors,
        }
    }

    fn order(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.order() {
            if q == 0.0 {
                q = tiny;
            }
            q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn top_eigenvalue(&self) -> f64 {
        let n = self.order();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        hi += f64::EPSILON * scale;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * scale {
                break;
            }
            if self.count_below(mid) == n {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector of the tridiagonal matrix for the (already accurate) eigenvalue `mu`.
    fn inverse_iteration(&self, mu: f64) -> Vec<f64> {
        let n = self.order();
        let scale = self
            .diag
            .iter()
            .chain(&self.off)
            .fold(0.0_f64, |a, b| a.max(b.abs()))
            .max(f64::MIN_POSITIVE);
        let lu = BandLu::factor(self, mu, f64::EPSILON * scale);
        let mut x = vec![1.0; n];
        for _ in 0..3 {
            x = lu.solve(x);
            let norm = norm2(&x);
            x.iter_mut().for_each(|v| *v /= norm);
        }
        x
    }

    /// Maps a vector from the tridiagonal basis back to the original one.
    fn back_transform(&self, mut y: Vec<f64>) -> Vec<f64> {
        for (k, refl) in self.reflectors.iter().enumerate().rev() {
            if let Some(v) = refl {
                let tail = &mut y[k + 1..];
                let dot: f64 = tail.iter().zip(v).map(|(a, b)| a * b).sum();
                tail.iter_mut().zip(v).for_each(|(a, b)| *a -= 2.0 * dot * b);
            }
        }
        y
    }
}

/// LU factors of `T − μI` with partial pivoting, kept in banded form.
struct BandLu {
    upper: Vec<f64>,
    super1: Vec<f64>,
    super2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

impl BandLu {
    fn factor(t: &Tridiagonal, mu: f64, floor: f64) -> Self {
        let n = t.order();
        let mut b: Vec<f64> = t.diag.iter().map(|d| d - mu).collect();
        let a = t.off.clone();
        let mut c = t.off.clone();
        let mut d2 = vec![0.0; n.saturating_sub(2)];
        let mut mult = vec![0.0; n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if b[i].abs() >= a[i].abs() {
                if b[i] == 0.0 {
                    b[i] = floor;
                }
                let l = a[i] / b[i];
                b[i + 1] -= l * c[i];
                mult[i] = l;
            } else {
                let l = b[i] / a[i];
                let old_c = c[i];
                b[i] = a[i];
                c[i] = b[i + 1];
                if i + 2 < n {
                    d2[i] = c[i + 1];
                    c[i + 1] = -l * d2[i];
                }
                b[i + 1] = old_c - l * c[i];
                mult[i] = l;
                swapped[i] = true;
            }
        }
        if b[n - 1] == 0.0 {
            b[n - 1] = floor;
        }
        Self {
            upper: b,
            super1: c,
            super2: d2,
            mult,
            swapped,
        }
    }

    fn solve(&self, mut r: Vec<f64>) -> Vec<f64> {
        let n = r.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                r.swap(i, i + 1);
            }
            r[i + 1] -= self.mult[i] * r[i];
        }
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut s = r[i];
            if i + 1 < n {
                s -= self.super1[i] * x[i + 1];
            }
            if i + 2 < n {
                s -= self.super2[i] * x[i + 2];
            }
            x[i] = s / self.upper[i];
        }
        x
    }
}

fn tridiagonal_top(m: &SymMatrix) -> Result<EigenPair> {
    if m.order() == 1 {
        return Ok(EigenPair {
            value: m.get(0, 0),
            vector: vec![1.0],
        });
    }
    let tri = Tridiagonal::reduce(m);
    let mu = tri.top_eigenvalue();
    let y = tri.inverse_iteration(mu);
    let mut vector = tri.back_transform(y);
    let norm = norm2(&vector);
    if !norm.is_finite() || norm == 0.0 {
        return Err(Error::numerical("inverse iteration produced a degenerate vector"));
    }
    vector.iter_mut().for_each(|x| *x /= norm);
    // The Rayleigh quotient is accurate to second order in the vector error.
    let value = m.quadratic_form(&vector);
    Ok(EigenPair { value, vector })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> SymMatrix {
        SymMatrix::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))
    }

    #[test]
    fn one_by_one() {
        let m = SymMatrix::from_rows(&[vec![0.5]]).unwrap();
        let p = sym_eig_top(&m).unwrap();
        assert_eq!(p.value, 0.5);
        assert_eq!(p.vector, vec![1.0]);
    }

    #[test]
    fn swap_matrix() {
        let m = SymMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let p = sym_eig_top(&m).unwrap();
        assert!((p.value - 1.0).abs() < 1e-15);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.vector[0] - h).abs() < 1e-15 && (p.vector[1] - h).abs() < 1e-15);
    }

    #[test]
    fn non_finite_is_input_error() {
        let m = SymMatrix::from_fn(2, |i, j| if i == j { f64::NAN } else { 0.0 });
        assert!(matches!(sym_eig_top(&m), Err(Error::Input(_))));
    }

    #[test]
    fn both_routes_agree_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let jacobi_only = Tolerances {
            jacobi_max_order: usize::MAX,
            ..Tolerances::default()
        };
        let tridiag_only = Tolerances {
            jacobi_max_order: 0,
            ..Tolerances::default()
        };
        for n in [2, 3, 5, 17, 40, 90] {
            let m = random_symmetric(n, &mut rng);
            let a = sym_eig_top_with(&m, &jacobi_only).unwrap();
            let b = sym_eig_top_with(&m, &tridiag_only).unwrap();
            assert!((a.value - b.value).abs() < 1e-12 * (1.0 + a.value.abs()), "n={n}");
            assert!((sym_eig_top_value(&m).unwrap() - a.value).abs() < 1e-12 * (1.0 + a.value.abs()));
            let overlap: f64 = a.vector.iter().zip(&b.vector).map(|(x, y)| x * y).sum();
            assert!((overlap.abs() - 1.0).abs() < 1e-9, "n={n} overlap {overlap}");
        }
    }

    #[test]
    fn jacobi_spectrum_sums_to_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let m = random_symmetric(12, &mut rng);
        let (values, _) = jacobi_eigen(&m).unwrap();
        assert!((values.iter().sum::<f64>() - m.trace()).abs() < 1e-12);
    }

    #[test]
    fn diagonal_matrix_with_zero_couplings() {
        let m = SymMatrix::from_fn(60, |i, j| if i == j { (i as f64 * 0.37).sin() } else { 0.0 });
        let p = sym_eig_top(&m).unwrap();
        let expected = (0..60).map(|i| (i as f64 * 0.37).sin()).fold(f64::MIN, f64::max);
        assert!((p.value - expected).abs() < 1e-14);
    }
}

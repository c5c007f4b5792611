//! The truncated stability operator K^(N)(P,T) = −K₁ + K₂ + K₃ and its top eigenvalue 𝔨^(N).

use std::f64::consts::PI;

use serde::Serialize;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::measure::{check_temperature, SpectralMeasure};
use crate::numerics::{
    determinant_dense, norm2, power_iteration_positive, sign_normalize, sym_eig_top_with, SymMatrix,
};

/// Above this value of ω_min/(2πT) every kernel average is 1 to machine precision
/// and the zero-temperature kernels are used directly.
pub const LOW_T_VARPI: f64 = 1e8;

const ACOS_SLACK: f64 = 1e-12;

#[doc(hidden)]
pub mod fault {
    //! Deliberate corruption of the operator, used to check that the invariant suite notices.
    use std::sync::atomic::{AtomicBool, Ordering};

    static FLIP_K3: AtomicBool = AtomicBool::new(false);

    pub fn set_k3_sign_flip(on: bool) {
        FLIP_K3.store(on, Ordering::SeqCst);
    }

    pub(crate) fn k3_sign() -> f64 {
        if FLIP_K3.load(Ordering::Relaxed) {
            -1.0
        } else {
            1.0
        }
    }
}

/// K^(N)(P,T) together with the kernel averages it was built from.
#[derive(Debug, Clone)]
pub struct EliashbergOperator {
    temperature: f64,
    /// ⟦1⟧..⟦2N−1⟧
    kernels: Vec<f64>,
    matrix: SymMatrix,
}

impl EliashbergOperator {
    /// Builds K^(N) from precomputed ⟦1⟧..⟦2N−1⟧.
    pub fn from_kernels(temperature: f64, kernels: Vec<f64>) -> Result<Self> {
        if kernels.is_empty() || kernels.len() % 2 == 0 {
            return Err(Error::Input(format!(
                "need 2N−1 kernel averages, got {}",
                kernels.len()
            )));
        }
        let n = (kernels.len() + 1) / 2;
        let kk = |i: usize| kernels[i - 1];
        let mut partial = vec![0.0; n];
        for i in 1..n {
            partial[i] = partial[i - 1] + kk(i);
        }
        let k3 = fault::k3_sign();
        let sqrt_odd: Vec<f64> = (0..n).map(|i| ((2 * i + 1) as f64).sqrt()).collect();
        let matrix = SymMatrix::from_fn(n, |i, j| {
            let norm = sqrt_odd[i] * sqrt_odd[j];
            let hankel = k3 * kk(i + j + 1) / norm;
            if i == j {
                hankel - 2.0 * partial[i] / (2 * i + 1) as f64
            } else {
                hankel + kk(j - i) / norm
            }
        });
        Ok(Self {
            temperature,
            kernels,
            matrix,
        })
    }

    pub fn order(&self) -> usize {
        self.matrix.order()
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn kernels(&self) -> &[f64] {
        &self.kernels
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    /// Diagonal of K₁.
    pub fn k1_diagonal(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.order());
        let mut partial = 0.0;
        for i in 0..self.order() {
            if i > 0 {
                partial += self.kernels[i - 1];
            }
            out.push(2.0 * partial / (2 * i + 1) as f64);
        }
        out
    }
}

/// Assembles K^(N)(P,T), computing each of ⟦1⟧..⟦2N−1⟧ once.
pub fn assemble_k(m: &SpectralMeasure, t: f64, n: usize) -> Result<EliashbergOperator> {
    check_temperature(t)?;
    if n == 0 {
        return Err(Error::Input("truncation order must be at least 1".into()));
    }
    let count = 2 * n - 1;
    let kernels = if m.omega_min() / (2.0 * PI * t) > LOW_T_VARPI {
        vec![1.0; count]
    } else {
        m.kernel_averages(count, t)?
    };
    EliashbergOperator::from_kernels(t, kernels)
}

/// 𝔨^(N) with its eigenvector; Λ^(N) = 1/𝔨^(N).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KBound {
    pub n: usize,
    pub k_value: f64,
    pub lambda_upper: f64,
    pub eigvec: Vec<f64>,
}

impl KBound {
    fn new(n: usize, k_value: f64, mut eigvec: Vec<f64>) -> Self {
        sign_normalize(&mut eigvec);
        Self {
            n,
            k_value,
            lambda_upper: 1.0 / k_value,
            eigvec,
        }
    }
}

/// 𝔨^(N) by the dense eigensolver.
pub fn k_numeric(m: &SpectralMeasure, t: f64, n: usize) -> Result<KBound> {
    k_numeric_with(m, t, n, &Tolerances::default())
}

pub fn k_numeric_with(m: &SpectralMeasure, t: f64, n: usize, tol: &Tolerances) -> Result<KBound> {
    let op = assemble_k(m, t, n)?;
    let pair = sym_eig_top_with(op.matrix(), tol)?;
    Ok(KBound::new(n, pair.value, pair.vector))
}

/// 𝔨^(N) for N ≤ 4 from the explicit root formulas.
pub fn k_closed_form(m: &SpectralMeasure, t: f64, n: usize) -> Result<KBound> {
    if !(1..=4).contains(&n) {
        return Err(Error::Input(format!("closed forms exist for N = 1..4, got {n}")));
    }
    let op = assemble_k(m, t, n)?;
    closed_form_of(op.matrix())
}

/// Largest eigenvalue of a symmetric matrix of order ≤ 4 by radicals, with an
/// eigenvector taken from the adjugate of M − 𝔨I.
pub fn closed_form_of(mat: &SymMatrix) -> Result<KBound> {
    let n = mat.order();
    let value = match n {
        1 => mat.get(0, 0),
        2 => {
            let tr = mat.trace();
            let det = mat.determinant();
            0.5 * (tr + (tr * tr - 4.0 * det).sqrt())
        }
        3 => cubic_top(mat)?,
        4 => quartic_top(mat)?,
        _ => return Err(Error::Input(format!("closed forms exist for N = 1..4, got {n}"))),
    };
    if !value.is_finite() {
        return Err(Error::numerical(format!("closed form for N = {n} is not finite")));
    }
    let eigvec = adjugate_vector(mat, value).unwrap_or_else(|| {
        sym_eig_top_with(mat, &Tolerances::default())
            .map(|p| p.vector)
            .unwrap_or_else(|_| vec![1.0; n])
    });
    Ok(KBound::new(n, value, eigvec))
}

fn clamped_acos(x: f64, what: &str) -> Result<f64> {
    if x.abs() > 1.0 + ACOS_SLACK || x.is_nan() {
        return Err(Error::numerical(format!("{what}: arccos argument {x} outside [−1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

fn principal_minor_sum(mat: &SymMatrix) -> f64 {
    let n = mat.order();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += mat.get(i, i) * mat.get(j, j) - mat.get(i, j) * mat.get(i, j);
        }
    }
    s
}

fn cubic_top(mat: &SymMatrix) -> Result<f64> {
    let a = mat.trace();
    let adj = principal_minor_sum(mat);
    let c = mat.determinant();
    let p = a * a / 3.0 - adj;
    let q = 2.0 * a.powi(3) / 27.0 - a * adj / 3.0 + c;
    if p <= 0.0 {
        // triple eigenvalue
        return Ok(a / 3.0);
    }
    let phi = clamped_acos(0.5 * q * (3.0 / p).powf(1.5), "N = 3 root")?;
    Ok((a + 6.0 * (p / 3.0).sqrt() * (phi / 3.0).cos()) / 3.0)
}

fn quartic_top(mat: &SymMatrix) -> Result<f64> {
    let m2 = mat.matmul(mat);
    let t1 = mat.trace();
    let t2: f64 = (0..4).map(|i| m2[i * 4 + i]).sum();
    let t3: f64 = (0..4)
        .flat_map(|i| (0..4).map(move |k| (i, k)))
        .map(|(i, k)| m2[i * 4 + k] * mat.get(k, i))
        .sum();
    let a = -t1;
    let b = 0.5 * (t1 * t1 - t2);
    let c = -(t1.powi(3) - 3.0 * t2 * t1 + 2.0 * t3) / 6.0;
    let d = mat.determinant();

    let x = 2.0 * b.powi(3) - 9.0 * a * b * c + 27.0 * c * c + 27.0 * a * a * d - 72.0 * b * d;
    let y = b * b - 3.0 * a * c + 12.0 * d;
    if y <= 0.0 {
        return Err(Error::numerical(format!("N = 4 resolvent: Y = {y} is not positive")));
    }
    let phi = clamped_acos(x / (2.0 * y.powf(1.5)), "N = 4 resolvent cubic")?;
    let z = (y.sqrt() * (phi / 3.0).cos() - b + 3.0 * a * a / 8.0) / 3.0;
    if !(z > 0.0) {
        return Err(Error::numerical(format!("N = 4 resolvent root Z = {z} is not positive")));
    }
    let inner = 3.0 * a * a / 16.0 - 0.5 * b - 0.5 * z
        - (a.powi(3) - 4.0 * a * b + 8.0 * c) / (16.0 * (2.0 * z).sqrt());
    if inner < -1e-12 * (1.0 + z.abs()) {
        return Err(Error::numerical(format!("N = 4 root: negative radicand {inner}")));
    }
    Ok((0.5 * z).sqrt() + inner.max(0.0).sqrt() - 0.25 * a)
}

/// Largest row of adj(M − μI), normalized; `None` if the adjugate vanishes.
fn adjugate_vector(mat: &SymMatrix, mu: f64) -> Option<Vec<f64>> {
    let n = mat.order();
    if n == 1 {
        return Some(vec![1.0]);
    }
    let a = mat.shifted(-mu);
    let mut best: Option<Vec<f64>> = None;
    let mut best_norm = 0.0;
    for i in 0..n {
        let row: Vec<f64> = (0..n)
            .map(|j| {
                let minor: Vec<f64> = (0..n)
                    .filter(|&r| r != i)
                    .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| a.get(r, c))
                    .collect();
                let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
                sign * determinant_dense(n - 1, minor)
            })
            .collect();
        let norm = norm2(&row);
        if norm > best_norm {
            best_norm = norm;
            best = Some(row);
        }
    }
    let scale = mat.as_slice().iter().fold(0.0_f64, |s, v| s.max(v.abs())).max(mu.abs());
    if best_norm <= 1e-13 * scale.powi(n as i32 - 1) {
        return None;
    }
    best.map(|v| v.into_iter().map(|x| x / best_norm).collect())
}

/// Zero-temperature limit 𝔨₀^(N) = −1 + 2Σ_{k<N} 1/(2k+1) and the floor λ_N = 1/𝔨₀^(N).
pub fn k_limit_t0(n: usize) -> (f64, f64) {
    assert!(n >= 1, "truncation order must be at least 1");
    if let Some((num, den)) = exact_k0(n) {
        return (num as f64 / den as f64, den as f64 / num as f64);
    }
    let s: f64 = (0..n).rev().map(|k| 1.0 / (2 * k + 1) as f64).sum();
    let k0 = 2.0 * s - 1.0;
    (k0, 1.0 / k0)
}

/// 𝔨₀^(N) as a reduced fraction while numerator and denominator stay exact in f64.
fn exact_k0(n: usize) -> Option<(u128, u128)> {
    fn gcd(mut a: u128, mut b: u128) -> u128 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    // running sum Σ 1/(2k+1) as p/q
    let (mut p, mut q) = (0u128, 1u128);
    for k in 0..n {
        let d = (2 * k + 1) as u128;
        p = p.checked_mul(d)?.checked_add(q)?;
        q = q.checked_mul(d)?;
        let g = gcd(p, q);
        p /= g;
        q /= g;
    }
    let num = (2 * p).checked_sub(q)?;
    let g = gcd(num, q);
    let (num, den) = (num / g, q / g);
    const EXACT: u128 = 1 << 53;
    (num < EXACT && den < EXACT).then_some((num, den))
}

/// Λ^(2) by its explicit reciprocal formula.
pub fn lambda2_closed(m: &SpectralMeasure, t: f64) -> Result<f64> {
    let op = assemble_k(m, t, 2)?;
    let k = op.kernels();
    let (k1, k2, k3) = (k[0], k[1], k[2]);
    let s13 = k1 + k3;
    let radicand = s13 * s13 + 12.0 * ((k1 + k2).powi(2) + k1 * (2.0 * k1 - k3));
    Ok(6.0 / (s13 + radicand.sqrt()))
}

/// Spectral radius of C(1/λ) = (I/λ + K₁)⁻¹(K₂ + K₃) truncated at order N.
pub fn c_spectral_radius(m: &SpectralMeasure, t: f64, lambda: f64, n: usize) -> Result<f64> {
    c_spectral_radius_with(m, t, lambda, n, &Tolerances::default())
}

pub fn c_spectral_radius_with(
    m: &SpectralMeasure,
    t: f64,
    lambda: f64,
    n: usize,
    tol: &Tolerances,
) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain {
            what: "coupling lambda",
            requirement: "lambda > 0",
            value: lambda,
        });
    }
    let op = assemble_k(m, t, n)?;
    let eta = 1.0 / lambda;
    let k1 = op.k1_diagonal();
    // K₂ + K₃ = K + K₁
    let kk = op.matrix();
    let positive = SymMatrix::from_fn(n, |i, j| kk.get(i, j) + if i == j { k1[i] } else { 0.0 });
    let scale: Vec<f64> = k1.iter().map(|d| 1.0 / (eta + d)).collect();
    power_iteration_positive(
        |x| {
            let y = positive.mul_vec(x);
            y.iter().zip(&scale).map(|(v, s)| v * s).collect()
        },
        n,
        tol.power_tol,
        tol.power_max_iter,
    )
}

const DERIV_COEFFS: [f64; 5] = [4392.0, 3888.0, 1370.0, 148.0, 2.0];

/// ∂/∂T² of 3⟦1⟧ + 2⟦2⟧ − ⟦3⟧ for a single frequency ω, in closed form.
pub fn derivative_integrand(omega: f64, t: f64) -> f64 {
    let s = 4.0 * PI * PI * t * t;
    let w2 = omega * omega;
    let numerator: f64 = DERIV_COEFFS
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let n = i as i32 + 1;
            c * w2.powi(n) * s.powi(5 - n)
        })
        .sum();
    let denominator: f64 = (1..=3).map(|j| ((j * j) as f64 * s + w2).powi(2)).product();
    -4.0 * PI * PI * numerator / denominator
}

/// Finite-difference and closed-integrand evaluations of ∂/∂T²⟨3⟦1⟧ + 2⟦2⟧ − ⟦3⟧⟩.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DerivativeCheck {
    pub finite_difference: f64,
    pub closed_form: f64,
    pub residual: f64,
}

pub fn dk_dt2_identity_check(m: &SpectralMeasure, t: f64) -> Result<DerivativeCheck> {
    check_temperature(t)?;
    let f = |s: f64| -> Result<f64> {
        let k = m.kernel_averages(3, s.sqrt())?;
        Ok(3.0 * k[0] + 2.0 * k[1] - k[2])
    };
    let s0 = t * t;
    let central = |h: f64| -> Result<f64> { Ok((f(s0 + h)? - f(s0 - h)?) / (2.0 * h)) };
    let h = 1e-3 * s0;
    let finite_difference = (4.0 * central(0.5 * h)? - central(h)?) / 3.0;
    let closed_form = m.expect(|w| derivative_integrand(w, t))?;
    Ok(DerivativeCheck {
        finite_difference,
        closed_form,
        residual: ((finite_difference - closed_form) / closed_form).abs(),
    })
}

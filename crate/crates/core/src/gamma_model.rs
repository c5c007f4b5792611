//! The γ-model operator 𝔊(γ) = −G₁ + G₂ + G₃ and its Dirichlet-series machinery.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::numerics::{sym_eig_top_with, EigenPair, SymMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct GammaOperator {
    pub gamma: f64,
    pub matrix: SymMatrix,
}

impl GammaOperator {
    pub fn order(&self) -> usize {
        self.matrix.order()
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "gamma",
            requirement: "gamma > 0",
            value: gamma,
        })
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Input("truncation order must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// 𝔊^(N)(γ).
pub fn assemble_gamma(gamma: f64, n: usize) -> Result<GammaOperator> {
    check_gamma(gamma)?;
    check_order(n)?;
    // inv_pow[k] = k^{−γ}, k = 1..2N−1
    let inv_pow: Vec<f64> = (0..2 * n).map(|k| if k == 0 { 0.0 } else { (k as f64).powf(-gamma) }).collect();
    let mut partial = vec![0.0; n];
    for i in 1..n {
        partial[i] = partial[i - 1] + 2.0 * inv_pow[i];
    }
    let sqrt_odd: Vec<f64> = (0..n).map(|i| ((2 * i + 1) as f64).sqrt()).collect();
    let matrix = SymMatrix::from_fn(n, |i, j| {
        let norm = sqrt_odd[i] * sqrt_odd[j];
        let g3 = inv_pow[i + j + 1] / norm;
        if i == j {
            g3 - partial[i] / (2 * i + 1) as f64
        } else {
            g3 + inv_pow[j - i] / norm
        }
    });
    Ok(GammaOperator { gamma, matrix })
}

/// Top eigenpair of 𝔊^(N)(γ).
pub fn g_top(gamma: f64, n: usize) -> Result<EigenPair> {
    g_top_with(gamma, n, &Tolerances::default())
}

pub fn g_top_with(gamma: f64, n: usize, tol: &Tolerances) -> Result<EigenPair> {
    sym_eig_top_with(&assemble_gamma(gamma, n)?.matrix, tol)
}

/// ⟨𝔊^(N)(γ′)⟩_γ: Rayleigh quotient of 𝔊^(N)(γ′) in the top eigenvector of 𝔊^(N)(γ).
pub fn expected_gamma(gamma_prime: f64, gamma: f64, n: usize) -> Result<f64> {
    check_gamma(gamma_prime)?;
    let v = g_top(gamma, n)?.vector;
    Ok(assemble_gamma(gamma_prime, n)?.matrix.rayleigh_quotient(&v))
}

/// g(2) at the reference order, computed once per process.
pub fn g2_reference() -> Result<f64> {
    static CELL: OnceLock<std::result::Result<f64, String>> = OnceLock::new();
    CELL.get_or_init(|| {
        let n = Tolerances::default().gamma_reference_order;
        g_top(2.0, n).map(|p| p.value).map_err(|e| e.to_string())
    })
    .clone()
    .map_err(Error::Numerical)
}

/// (g^(N)(2), ⟨𝔊^(N)(4)⟩₂), memoized per order.
pub fn asymptotic_coefficients(n: usize) -> Result<(f64, f64)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, (f64, f64)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().expect("cache poisoned").get(&n) {
        return Ok(*v);
    }
    let top = g_top(2.0, n)?;
    let g4 = assemble_gamma(4.0, n)?.matrix.rayleigh_quotient(&top.vector);
    let v = (top.value, g4);
    cache.lock().expect("cache poisoned").insert(n, v);
    Ok(v)
}

/// Nonnegative sequence θ₀..θ_{N−1}, related to Ξ by ξₙ = √(2n+1)·θₙ.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaSequence(Vec<f64>);

impl ThetaSequence {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !(**v >= 0.0 && v.is_finite())) {
            return Err(Error::Input(format!("theta[{i}] = {v} is not a finite nonnegative number")));
        }
        Ok(Self(values))
    }

    /// θₙ = ξₙ/√(2n+1), without the sign check (eigenvectors may carry rounding-level negatives).
    pub fn from_xi(xi: &[f64]) -> Self {
        Self(xi.iter().enumerate().map(|(n, x)| x / ((2 * n + 1) as f64).sqrt()).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True if θₙ₊₁ ≤ θₙ + slack for every n.
    pub fn is_nonincreasing(&self, slack: f64) -> bool {
        self.0.windows(2).all(|w| w[1] <= w[0] + slack)
    }

    /// ⟨Θ, 𝔇Θ⟩ = Σ (2n+1)θₙ².
    pub fn diag_form(&self) -> f64 {
        self.0.iter().enumerate().map(|(n, t)| (2 * n + 1) as f64 * t * t).sum()
    }

    /// ⟨Θ, Ĝ^(N)(γ)Θ⟩ summed directly over index pairs.
    pub fn hat_g_form(&self, gamma: f64) -> f64 {
        let th = &self.0;
        let n = th.len();
        let mut total = 0.0;
        let mut partial = 0.0;
        for i in 0..n {
            if i > 0 {
                partial += 2.0 * (i as f64).powf(-gamma);
            }
            total -= partial * th[i] * th[i];
            for j in 0..n {
                let mut k = ((i + j + 1) as f64).powf(-gamma);
                if i != j {
                    k += (i.abs_diff(j) as f64).powf(-gamma);
                }
                total += th[i] * k * th[j];
            }
        }
        total
    }
}

/// Coefficients c₁..c_{2N−1} with Σ c_k/k^γ = ⟨Θ, Ĝ^(N)(γ)Θ⟩ for every γ.
///
/// The Riesz part contributes 2Σ_{n≥k}(θ_{n−k} − θₙ)θₙ for k ≤ N−1; the Hankel
/// part contributes the ordered self-convolution Σ_{n+m=k−1} θₙθ_m, split into
/// the doubled off-diagonal pairs and the odd-k square θ²_{(k−1)/2}.
pub fn dirichlet_coefficients(theta: &ThetaSequence, n: usize) -> Result<Vec<f64>> {
    check_order(n)?;
    if theta.len() != n {
        return Err(Error::Input(format!(
            "theta has length {} but the order is {n}",
            theta.len()
        )));
    }
    let th = theta.values();
    let mut c = vec![0.0; 2 * n - 1];
    for k in 1..2 * n {
        let mut ck = 0.0;
        if k < n {
            ck += (k..n).map(|i| 2.0 * (th[i - k] - th[i]) * th[i]).sum::<f64>();
        }
        // pairs i < j with i + j = k − 1, both below n
        let lo = (k - 1).saturating_sub(n - 1);
        let mut i = lo;
        while 2 * i < k - 1 {
            ck += 2.0 * th[i] * th[k - 1 - i];
            i += 1;
        }
        if k % 2 == 1 {
            let h = (k - 1) / 2;
            if h < n {
                ck += th[h] * th[h];
            }
        }
        c[k - 1] = ck;
    }
    Ok(c)
}

/// Σ_k c_k/k^γ.
pub fn dirichlet_series(coefficients: &[f64], gamma: f64) -> f64 {
    coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| c * ((i + 1) as f64).powf(-gamma))
        .sum()
}

/// The conjectured lower bound (1/N²)Σ_{k=1}^{2N−1} min{k, 2N−k}/k^γ, attained by constant Θ.
pub fn constant_sequence_bound(n: usize, gamma: f64) -> f64 {
    let nf = n as f64;
    (1..2 * n)
        .map(|k| k.min(2 * n - k) as f64 * (k as f64).powf(-gamma))
        .sum::<f64>()
        / (nf * nf)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        assert_eq!(assemble_gamma(2.0, 1).unwrap().matrix.get(0, 0), 1.0);
        assert_eq!(assemble_gamma(4.0, 1).unwrap().matrix.get(0, 0), 1.0);
        let m = assemble_gamma(2.0, 2).unwrap().matrix;
        assert!((m.get(0, 1) - 5.0 / (4.0 * 3f64.sqrt())).abs() < 1e-15);
        // (1,1): −2/3 + 1/(3·9)
        assert!((m.get(1, 1) - (-2.0 / 3.0 + 1.0 / 27.0)).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_gamma() {
        assert!(matches!(assemble_gamma(0.0, 3), Err(Error::Domain { .. })));
        assert!(matches!(assemble_gamma(-1.0, 3), Err(Error::Domain { .. })));
    }

    #[test]
    fn two_by_two_top_matches_quadratic() {
        let m = assemble_gamma(2.0, 2).unwrap().matrix;
        let (a, b, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 1));
        let expected = 0.5 * (a + d + ((a - d).powi(2) + 4.0 * b * b).sqrt());
        assert!((g_top(2.0, 2).unwrap().value - expected).abs() < 1e-14);
    }

    #[test]
    fn dirichlet_small_cases() {
        let c = dirichlet_coefficients(&ThetaSequence::new(vec![1.0]).unwrap(), 1).unwrap();
        assert_eq!(c, vec![1.0]);
        let c = dirichlet_coefficients(&ThetaSequence::new(vec![1.0, 1.0]).unwrap(), 2).unwrap();
        assert_eq!(c, vec![1.0, 2.0, 1.0]);
        let c = dirichlet_coefficients(&ThetaSequence::new(vec![1.0, 0.0]).unwrap(), 2).unwrap();
        assert_eq!(c, vec![1.0, 0.0, 0.0]);
        assert!(dirichlet_coefficients(&ThetaSequence::new(vec![1.0]).unwrap(), 2).is_err());
    }

    #[test]
    fn dirichlet_identity_beyond_order_two() {
        let th = ThetaSequence::new(vec![1.0, 0.8, 0.5, 0.45, 0.1]).unwrap();
        let c = dirichlet_coefficients(&th, 5).unwrap();
        for gamma in [1.5, 2.0, 4.0] {
            let lhs = dirichlet_series(&c, gamma);
            assert!((lhs - th.hat_g_form(gamma)).abs() < 1e-13, "gamma {gamma}");
        }
    }

    #[test]
    fn constant_sequence_attains_bound() {
        for n in [1, 3, 10] {
            let th = ThetaSequence::new(vec![0.7; n]).unwrap();
            let q = th.hat_g_form(2.0) / th.diag_form();
            assert!((q - constant_sequence_bound(n, 2.0)).abs() < 1e-13);
        }
    }

    #[test]
    fn hat_form_matches_operator() {
        let th = ThetaSequence::new(vec![0.9, 0.6, 0.2, 0.1]).unwrap();
        let xi: Vec<f64> = th.values().iter().enumerate().map(|(n, t)| t * ((2 * n + 1) as f64).sqrt()).collect();
        let g = assemble_gamma(2.0, 4).unwrap().matrix;
        assert!((g.quadratic_form(&xi) - th.hat_g_form(2.0)).abs() < 1e-14);
    }
}

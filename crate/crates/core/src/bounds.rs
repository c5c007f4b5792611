//! Closed-form bounds on 𝔨, Λ and T_c.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma_model::{asymptotic_coefficients, g2_reference};
use crate::measure::{check_temperature, SpectralMeasure};
use crate::numerics::riemann_zeta;
use crate::operator::k_numeric;

pub const EPSILON: f64 = 0.65;

/// ε and b = 2√((2^{1+ε} − 1)ζ(1+ε)ζ(5−ε)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundConstants {
    pub epsilon: f64,
    pub b: f64,
}

impl BoundConstants {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 4.0) {
            return Err(Error::Domain {
                what: "epsilon",
                requirement: "0 < epsilon < 4",
                value: epsilon,
            });
        }
        let product = (2f64.powf(1.0 + epsilon) - 1.0) * riemann_zeta(1.0 + epsilon)? * riemann_zeta(5.0 - epsilon)?;
        Ok(Self {
            epsilon,
            b: 2.0 * product.sqrt(),
        })
    }

    /// The constants at ε = 0.65, computed once.
    pub fn standard() -> Self {
        static CELL: OnceLock<BoundConstants> = OnceLock::new();
        *CELL.get_or_init(|| Self::new(EPSILON).expect("zeta arguments 1.65 and 4.35 are in range"))
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "coupling lambda",
            requirement: "lambda > 0",
            value: lambda,
        })
    }
}

/// ⟨ϖ²⟩ = ⟨ω²⟩/(4π²T²).
pub fn mean_varpi_sq(m: &SpectralMeasure, t: f64) -> Result<f64> {
    check_temperature(t)?;
    Ok(m.moment(2) / (4.0 * PI * PI * t * t))
}

/// 𝔨* = 𝔨^(1) + b⟨ϖ²⟩, an upper bound on 𝔨.
pub fn k_star(m: &SpectralMeasure, t: f64) -> Result<f64> {
    let u = mean_varpi_sq(m, t)?;
    Ok(m.kernel_average(1, t)? + BoundConstants::standard().b * u)
}

/// 𝔨♯ = ⟨ϖ²⟩/(⟨ϖ²⟩ + 1) + b⟨ϖ²⟩ ≥ 𝔨*.
pub fn k_sharp(m: &SpectralMeasure, t: f64) -> Result<f64> {
    let u = mean_varpi_sq(m, t)?;
    Ok(u / (u + 1.0) + BoundConstants::standard().b * u)
}

/// T_c♯: the temperature where λ𝔨♯ = 1, an upper bound on T_c.
pub fn tc_sharp(m: &SpectralMeasure, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let b = BoundConstants::standard().b;
    let beta = lambda * (1.0 + b) - 1.0;
    let root = (beta * beta + 4.0 * b * lambda).sqrt();
    let half = if beta >= 0.0 {
        0.5 * (beta + root)
    } else {
        2.0 * b * lambda / (root - beta)
    };
    Ok(m.moment(2).sqrt() / (2.0 * PI) * half.sqrt())
}

/// T_c♭ = (1/2π)√(λ⟨ω²⟩ − Ω̄²), a lower bound on T_c, defined for λ > Ω̄²/⟨ω²⟩.
pub fn tc_flat(m: &SpectralMeasure, lambda: f64) -> Option<f64> {
    let w2 = m.moment(2);
    let excess = lambda * w2 - m.omega_bar().powi(2);
    (lambda > 0.0 && excess > 0.0).then(|| excess.sqrt() / (2.0 * PI))
}

/// T_c~ = (1/2π)√(g(2)⟨ω²⟩λ), the conjectured upper bound.
pub fn tc_tilde(m: &SpectralMeasure, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok((g2_reference()? * m.moment(2) * lambda).sqrt() / (2.0 * PI))
}

/// T_* = Ω̄/(2√2π), the proven threshold above which 𝔨^(N) decreases in T.
pub fn t_star(m: &SpectralMeasure) -> f64 {
    m.omega_bar() / (2.0 * 2f64.sqrt() * PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaStar {
    /// 1/𝔨^(4)(P, T_*)
    pub strong: f64,
    /// (3/2)Ω̄²/⟨ω²⟩
    pub easy: f64,
}

/// Estimates of λ_*, above which T_c ≥ T_*.
pub fn lambda_star_bounds(m: &SpectralMeasure) -> Result<LambdaStar> {
    let strong = k_numeric(m, t_star(m), 4)?.lambda_upper;
    Ok(LambdaStar {
        strong,
        easy: 1.5 * m.omega_bar().powi(2) / m.moment(2),
    })
}

/// Smallest λ for which [`tc_asymptotic`] is defined at order N.
pub fn tc_asymptotic_threshold(m: &SpectralMeasure, n: usize) -> Result<f64> {
    let (a, c) = asymptotic_ac(m, n)?;
    Ok(4.0 * c / (a * a))
}

fn asymptotic_ac(m: &SpectralMeasure, n: usize) -> Result<(f64, f64)> {
    let (g2, g4) = asymptotic_coefficients(n)?;
    let a = g2 * m.moment(2) / (4.0 * PI * PI);
    let c = g4 * m.moment(4) / (16.0 * PI.powi(4));
    Ok((a, c))
}

/// Two-term large-λ approximation to T_c^(N): inverts λ(a/T² − c/T⁴) = 1.
pub fn tc_asymptotic(m: &SpectralMeasure, lambda: f64, n: usize) -> Result<f64> {
    check_lambda(lambda)?;
    let (a, c) = asymptotic_ac(m, n)?;
    let disc = a * a - 4.0 * c / lambda;
    if disc < 0.0 {
        return Err(Error::Domain {
            what: "coupling lambda for the large-lambda asymptotics",
            requirement: "lambda >= 4<G(4)>_2<w^4>/(g(2)^2<w^2>^2)",
            value: lambda,
        });
    }
    // x = 1/T² is the smaller root of c x² − a x + 1/λ = 0
    let x = (2.0 / lambda) / (a + disc.sqrt());
    Ok(1.0 / x.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn b_value() {
        let b = BoundConstants::standard().b;
        assert!((b - 4.429_857_369_384_94).abs() < 1e-10, "{b}");
    }

    #[test]
    fn sharp_defining_identity() {
        let m = SpectralMeasure::einstein(1.0).unwrap();
        for lambda in [0.01, 0.5, 2.0, 100.0] {
            let t = tc_sharp(&m, lambda).unwrap();
            assert!((lambda * k_sharp(&m, t).unwrap() - 1.0).abs() < 1e-12, "{lambda}");
        }
    }

    #[test]
    fn flat_einstein() {
        let m = SpectralMeasure::einstein(1.7).unwrap();
        assert!((tc_flat(&m, 2.0).unwrap() - 1.7 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(tc_flat(&m, 1.0), None);
        assert_eq!(tc_flat(&m, 0.5), None);
    }

    #[test]
    fn einstein_star_and_sharp_coincide() {
        let t = 0.3;
        let m = SpectralMeasure::einstein(2.0 * PI * t).unwrap();
        let b = BoundConstants::standard().b;
        assert!((k_star(&m, t).unwrap() - (0.5 + b)).abs() < 1e-13);
        assert!((k_sharp(&m, t).unwrap() - (0.5 + b)).abs() < 1e-13);
    }

    #[test]
    fn jensen_is_strict_for_two_atoms() {
        let m = SpectralMeasure::from_atoms(&[(0.5, 1.0), (0.5, 2.0)]).unwrap();
        let t = 0.25;
        assert!(k_sharp(&m, t).unwrap() > k_star(&m, t).unwrap());
    }

    #[test]
    fn lambda_star_easy() {
        assert_eq!(lambda_star_bounds(&SpectralMeasure::einstein(3.0).unwrap()).unwrap().easy, 1.5);
        let m = SpectralMeasure::from_atoms(&[(0.5, 1.0), (0.5, 2.0)]).unwrap();
        assert!((lambda_star_bounds(&m).unwrap().easy - 2.4).abs() < 1e-14);
    }

    #[test]
    fn t_star_value() {
        let m = SpectralMeasure::einstein(1.0).unwrap();
        assert!((t_star(&m) - 0.112_539_539_519).abs() < 1e-11);
    }
}

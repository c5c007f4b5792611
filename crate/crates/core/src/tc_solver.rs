//! Critical-temperature bounds by inverting T ↦ Λ^(N)(P, T).

use std::f64::consts::PI;

use serde::Serialize;

use crate::bounds::{lambda_star_bounds, tc_flat, tc_sharp, tc_tilde, LambdaStar};
pub use crate::bounds::t_star;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::measure::SpectralMeasure;
use crate::numerics::{brent_root, sym_eig_top_value};
use crate::operator::{assemble_k, k_limit_t0};

/// What is proven about an inverted temperature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TcStatus {
    /// Λ^(N) is proven monotone where the root was found.
    Proven,
    /// Root found below T_* for N ≥ 3, where monotonicity is unproven.
    Heuristic,
    /// λ ≤ λ_N: Λ^(N) never comes down to λ.
    Undefined,
}

impl TcStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TcStatus::Proven => "proven",
            TcStatus::Heuristic => "heuristic",
            TcStatus::Undefined => "undefined",
        }
    }
}

/// Thresholds that decide the status of an inversion at order N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InversionDomain {
    pub t_star: f64,
    /// λ_N = 1/𝔨₀^(N)
    pub lambda_n_floor: f64,
    pub lambda_star_easy: f64,
}

impl InversionDomain {
    pub fn new(m: &SpectralMeasure, n: usize) -> Self {
        Self {
            t_star: t_star(m),
            lambda_n_floor: k_limit_t0(n).1,
            lambda_star_easy: 1.5 * m.omega_bar().powi(2) / m.moment(2),
        }
    }
}

/// One rung T_c^(N) of the ladder of lower bounds on T_c.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TcEntry {
    pub n: usize,
    pub value: Option<f64>,
    pub status: TcStatus,
    /// λ_N, reported so undefined entries can say why.
    pub lambda_floor: f64,
}

/// Solves Λ^(N)(P, T) = λ for T.
pub fn tc_n(m: &SpectralMeasure, lambda: f64, n: usize) -> Result<TcEntry> {
    tc_n_with(m, lambda, n, &Tolerances::default(), None)
}

/// [`tc_n`] with explicit tolerances and an optional temperature expected to
/// lie at or just below the root (typically T_c at a lower order).
pub fn tc_n_with(
    m: &SpectralMeasure,
    lambda: f64,
    n: usize,
    tol: &Tolerances,
    hint: Option<f64>,
) -> Result<TcEntry> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain {
            what: "coupling lambda",
            requirement: "lambda > 0",
            value: lambda,
        });
    }
    if n == 0 {
        return Err(Error::Input("truncation order must be at least 1".into()));
    }
    let domain = InversionDomain::new(m, n);
    let entry = |value: Option<f64>, status| TcEntry {
        n,
        value,
        status,
        lambda_floor: domain.lambda_n_floor,
    };
    if lambda <= domain.lambda_n_floor {
        return Ok(entry(None, TcStatus::Undefined));
    }
    if n == 1 && m.is_single_atom() {
        // λΩ²/(Ω² + 4π²T²) = 1
        let t = m.omega_bar() / (2.0 * PI) * (lambda - 1.0).sqrt();
        return Ok(entry(Some(t), TcStatus::Proven));
    }

    let inv_lambda = 1.0 / lambda;
    let excess = |s: f64| -> Result<f64> {
        let op = assemble_k(m, s.sqrt(), n)?;
        Ok(sym_eig_top_value(op.matrix())? - inv_lambda)
    };

    let t_upper = 2.0 * tc_sharp(m, lambda)?;
    let mut lo: Option<(f64, f64)> = None;
    let mut hi: Option<(f64, f64)> = None;
    if let Some(h) = hint.filter(|h| *h > 0.0 && *h < t_upper) {
        let s = h * h;
        let g = excess(s)?;
        if g > 0.0 {
            lo = Some((s, g));
            let s_up = s * 1.2;
            let g_up = excess(s_up)?;
            if g_up < 0.0 {
                hi = Some((s_up, g_up));
            } else {
                lo = Some((s_up, g_up));
            }
        }
    }
    let (mut s_hi, mut g_hi) = match hi {
        Some(v) => v,
        None => {
            let s = t_upper * t_upper;
            (s, excess(s)?)
        }
    };
    for _ in 0..60 {
        if g_hi < 0.0 {
            break;
        }
        s_hi *= 4.0;
        g_hi = excess(s_hi)?;
    }
    let (mut s_lo, mut g_lo) = match lo {
        Some(v) => v,
        None => {
            let t = tc_flat(m, lambda).map_or(t_upper * 1e-6, |f| 0.5 * f);
            (t * t, excess(t * t)?)
        }
    };
    for _ in 0..40 {
        if g_lo > 0.0 {
            break;
        }
        s_lo /= 100.0;
        g_lo = excess(s_lo)?;
    }
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Err(Error::Bracket {
            lo: s_lo.sqrt(),
            hi: s_hi.sqrt(),
            f_lo: 1.0 / (g_lo + inv_lambda),
            f_hi: 1.0 / (g_hi + inv_lambda),
            target: lambda,
        });
    }
    let s = brent_root(excess, (s_lo, g_lo), (s_hi, g_hi), tol.bisect_tol, 0.0, 500)?;
    let t = s.sqrt();
    let status = if n <= 2 || t >= domain.t_star {
        TcStatus::Proven
    } else {
        TcStatus::Heuristic
    };
    Ok(entry(Some(t), status))
}

/// Everything known about T_c(λ, P): the ladder, the closed-form brackets and
/// the converged estimate when the ladder settles.
#[derive(Debug, Clone, Serialize)]
pub struct TcReport {
    pub lambda: f64,
    pub measure: SpectralMeasure,
    pub tc_ladder: Vec<TcEntry>,
    pub tc_flat: Option<f64>,
    pub tc_sharp: f64,
    /// Conjectured, not proven.
    pub tc_tilde: f64,
    pub lambda_star_bound: LambdaStar,
    pub t_star: f64,
    pub converged_tc: Option<f64>,
    pub converged_n: Option<usize>,
    pub converged_status: Option<TcStatus>,
    pub tolerance: Option<f64>,
}

impl TcReport {
    fn skeleton(m: &SpectralMeasure, lambda: f64) -> Result<Self> {
        Ok(Self {
            lambda,
            measure: m.clone(),
            tc_ladder: Vec::new(),
            tc_flat: tc_flat(m, lambda),
            tc_sharp: tc_sharp(m, lambda)?,
            tc_tilde: tc_tilde(m, lambda)?,
            lambda_star_bound: lambda_star_bounds(m)?,
            t_star: t_star(m),
            converged_tc: None,
            converged_n: None,
            converged_status: None,
            tolerance: None,
        })
    }

    /// Report for a single truncation order.
    pub fn for_order(m: &SpectralMeasure, lambda: f64, n: usize) -> Result<Self> {
        let mut report = Self::skeleton(m, lambda)?;
        report.tc_ladder.push(tc_n(m, lambda, n)?);
        Ok(report)
    }

    pub fn entry(&self, n: usize) -> Option<&TcEntry> {
        self.tc_ladder.iter().find(|e| e.n == n)
    }
}

/// Runs the ladder N = 1, 2, 3, 4, 8, 16, … until consecutive doublings agree to `tol`.
pub fn tc_converged(m: &SpectralMeasure, lambda: f64, tol: f64) -> Result<TcReport> {
    tc_converged_with(m, lambda, tol, &Tolerances::default())
}

pub fn tc_converged_with(m: &SpectralMeasure, lambda: f64, tol: f64, cfg: &Tolerances) -> Result<TcReport> {
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "convergence tolerance",
            requirement: "tol > 0",
            value: tol,
        });
    }
    let mut report = TcReport::skeleton(m, lambda)?;
    report.tolerance = Some(tol);
    let mut hint = None;
    for n in 1..=3 {
        let e = tc_n_with(m, lambda, n, cfg, hint)?;
        hint = e.value.or(hint);
        report.tc_ladder.push(e);
    }
    let mut previous: Option<TcEntry> = None;
    let mut n = 4;
    while n <= cfg.ladder_max_order {
        let e = tc_n_with(m, lambda, n, cfg, hint)?;
        hint = e.value.or(hint);
        report.tc_ladder.push(e);
        if let (Some(prev), Some(cur)) = (previous.and_then(|p| p.value), e.value) {
            if (cur - prev).abs() <= tol * cur {
                report.converged_tc = Some(cur);
                report.converged_n = Some(n);
                report.converged_status = Some(e.status);
                return Ok(report);
            }
        }
        previous = Some(e);
        n *= 2;
    }
    log::warn!(
        "T_c ladder for lambda = {lambda} did not settle to {tol} by N = {}",
        cfg.ladder_max_order
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_order_one() {
        let m = SpectralMeasure::einstein(1.0).unwrap();
        let e = tc_n(&m, 2.0, 1).unwrap();
        assert!((e.value.unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(e.status, TcStatus::Proven);
    }

    #[test]
    fn quadrature_path_matches_analytic_order_one() {
        let m = SpectralMeasure::from_atoms(&[(0.5, 1.0), (0.5, 1.0)]).unwrap();
        let e = tc_n(&m, 2.0, 1).unwrap();
        assert!((e.value.unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn below_floor_is_undefined() {
        let m = SpectralMeasure::einstein(1.0).unwrap();
        let e = tc_n(&m, 0.5, 2).unwrap();
        assert_eq!(e.status, TcStatus::Undefined);
        assert_eq!(e.lambda_floor, 0.6);
    }

    #[test]
    fn ladder_increases() {
        let m = SpectralMeasure::einstein(1.0).unwrap();
        let v: Vec<f64> = (1..=4).map(|n| tc_n(&m, 2.0, n).unwrap().value.unwrap()).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]), "{v:?}");
    }
}

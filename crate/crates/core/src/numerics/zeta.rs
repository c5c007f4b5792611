use crate::error::{Error, Result};

/// Bernoulli numbers B₂, B₄, …, B₁₆.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Riemann ζ(s) for real s > 1, by Euler–Maclaurin corrected partial summation.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Domain {
            what: "zeta argument s",
            requirement: "1 < s < ∞",
            value: s,
        });
    }
    const N: usize = 20;
    let n = N as f64;
    let head: f64 = (1..N).rev().map(|k| (k as f64).powf(-s)).sum();
    let mut tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);

    // Term j: B_{2j}/(2j)! · s(s+1)…(s+2j−2) · N^{−s−2j+1}
    let mut rising = s;
    let mut factorial = 2.0;
    let mut power = n.powf(-s - 1.0);
    for (j, b) in BERNOULLI.iter().enumerate() {
        let term = b / factorial * rising * power;
        tail += term;
        let k = 2.0 * (j as f64 + 1.0);
        rising *= (s + k - 1.0) * (s + k);
        factorial *= (k + 1.0) * (k + 2.0);
        power /= n * n;
    }
    Ok(head + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn closed_forms() {
        assert!((riemann_zeta(2.0).unwrap() - PI * PI / 6.0).abs() < 1e-14);
        assert!((riemann_zeta(4.0).unwrap() - PI.powi(4) / 90.0).abs() < 1e-14);
        assert!((riemann_zeta(6.0).unwrap() - PI.powi(6) / 945.0).abs() < 1e-14);
    }

    #[test]
    fn domain() {
        for s in [1.0, 0.5, -2.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(riemann_zeta(s), Err(Error::Domain { .. })), "{s}");
        }
    }

    #[test]
    fn large_argument_tends_to_one() {
        assert!((riemann_zeta(60.0).unwrap() - 1.0).abs() < 1e-17);
    }
}

use crate::error::{Error, Result};

/// Spectral radius of a linear map that preserves the nonnegative cone.
///
/// Iterates from the all-ones vector and stops once the Collatz–Wielandt
/// bracket `min (Ax)ᵢ/xᵢ ≤ ρ ≤ max (Ax)ᵢ/xᵢ` is relatively narrower than `tol`.
/// If the plain iteration stalls (periodic maps), the iterate is averaged with
/// `σ·x`, which leaves the Perron vector unchanged.
pub fn power_iteration_positive<F>(mut apply: F, n: usize, tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    if n == 0 {
        return Err(Error::Input("power iteration needs a positive dimension".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "power iteration tolerance",
            requirement: "tol > 0",
            value: tol,
        });
    }
    let mut x = vec![1.0; n];
    let mut lower = 0.0_f64;
    let mut upper = f64::INFINITY;
    let mut shift = 0.0;
    let shift_after = 1000.min(max_iter / 2).max(1);

    for iter in 0..max_iter {
        let y = apply(&x);
        if y.len() != n {
            return Err(Error::numerical(format!(
                "map returned length {} for input length {n}",
                y.len()
            )));
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0_f64;
        for (yi, xi) in y.iter().zip(&x) {
            if !yi.is_finite() || *yi < 0.0 {
                return Err(Error::numerical(format!(
                    "map left the nonnegative cone (component {yi})"
                )));
            }
            if *xi > 0.0 {
                let r = yi / xi;
                lo = lo.min(r);
                hi = hi.max(r);
            } else if *yi > 0.0 {
                hi = f64::INFINITY;
            }
        }
        if hi == 0.0 {
            return Ok(0.0);
        }
        if lo.is_finite() {
            lower = lower.max(lo);
        }
        upper = upper.min(hi);
        if upper - lower <= tol * upper {
            return Ok(0.5 * (lower + upper));
        }
        if iter + 1 == shift_after {
            shift = 0.5 * upper.min(2.0 * lower.max(f64::MIN_POSITIVE));
        }
        let mut next: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a + shift * b).collect();
        let norm = next.iter().fold(0.0_f64, |a, b| a.max(*b));
        next.iter_mut().for_each(|v| *v /= norm);
        x = next;
    }
    Err(Error::PowerIteration {
        iterations: max_iter,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_map() {
        for n in [1, 3, 10] {
            let r = power_iteration_positive(|x| x.to_vec(), n, 1e-12, 100).unwrap();
            assert_eq!(r, 1.0);
        }
    }

    #[test]
    fn swap_map() {
        let r = power_iteration_positive(|x| vec![x[1], x[0]], 2, 1e-12, 100).unwrap();
        assert_eq!(r, 1.0);
    }

    #[test]
    fn periodic_map_needs_the_shift() {
        // [[0,2],[1/2,0]] has ρ = 1 but the plain iterate from ones oscillates.
        let r = power_iteration_positive(|x| vec![2.0 * x[1], 0.5 * x[0]], 2, 1e-12, 100_000).unwrap();
        assert!((r - 1.0).abs() < 1e-11, "{r}");
    }

    #[test]
    fn positive_matrix_matches_closed_form() {
        // [[2,1],[1,3]] → (5 + √5)/2
        let r = power_iteration_positive(
            |x| vec![2.0 * x[0] + x[1], x[0] + 3.0 * x[1]],
            2,
            1e-13,
            100_000,
        )
        .unwrap();
        assert!((r - (5.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn cap_reports_bracket() {
        let err = power_iteration_positive(
            |x| vec![x[0] + 0.999 * x[1], 0.999 * x[0] + x[1] + 1e-3 * x[2], x[2]],
            3,
            1e-15,
            3,
        )
        .unwrap_err();
        assert!(matches!(err, Error::PowerIteration { iterations: 3, .. }));
    }
}

use crate::error::{Error, Result};

/// Solves `f(x) = target` for continuous, strictly monotone `f` on `[lo, hi]`.
///
/// The direction of monotonicity is read off the endpoint values. Bisection
/// stops once the bracket is no wider than `tol·(hi − lo)`.
pub fn bisect_monotone<F>(mut f: F, lo: f64, hi: f64, target: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    try_bisect_monotone(|x| Ok(f(x)), lo, hi, target, tol)
}

/// [`bisect_monotone`] for maps whose evaluation can fail.
pub fn try_bisect_monotone<F>(mut f: F, lo: f64, hi: f64, target: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Input(format!("invalid bisection interval [{lo}, {hi}]")));
    }
    if !(tol > 0.0) {
        return Err(Error::Domain {
            what: "bisection tolerance",
            requirement: "tol > 0",
            value: tol,
        });
    }
    let f_lo = f(lo)? - target;
    let f_hi = f(hi)? - target;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo * f_hi < 0.0) {
        return Err(Error::Bracket {
            lo,
            hi,
            f_lo: f_lo + target,
            f_hi: f_hi + target,
            target,
        });
    }
    let increasing = f_hi > 0.0;
    let width = tol * (hi - lo);
    let (mut a, mut b) = (lo, hi);
    while b - a > width {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let v = f(mid)? - target;
        if v == 0.0 {
            return Ok(mid);
        }
        if (v > 0.0) == increasing {
            b = mid;
        } else {
            a = mid;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let x = bisect_monotone(|x| x, 0.0, 1.0, 0.3, 1e-14).unwrap();
        assert!((x - 0.3).abs() < 1e-14);
    }

    #[test]
    fn square() {
        let x = bisect_monotone(|x| x * x, 0.0, 10.0, 4.0, 1e-14).unwrap();
        assert!((x - 2.0).abs() < 1e-12);
    }

    #[test]
    fn decreasing() {
        let x = bisect_monotone(|x| -x.powi(3), -1.0, 3.0, -8.0, 1e-15).unwrap();
        assert!((x - 2.0).abs() < 1e-13);
    }

    #[test]
    fn unbracketed() {
        let err = bisect_monotone(|x| x, 0.0, 1.0, 2.0, 1e-12).unwrap_err();
        match err {
            Error::Bracket { f_lo, f_hi, .. } => {
                assert_eq!(f_lo, 0.0);
                assert_eq!(f_hi, 1.0);
            }
            other => panic!("{other:?}"),
        }
    }
}

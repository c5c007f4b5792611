use crate::error::{Error, Result};

/// Root of `f` on a sign-changing bracket by Brent's method.
///
/// Keeps a bracket throughout and stops once it is narrower than
/// `rel_tol·|x| + abs_tol`. `f_lo` and `f_hi` are the already known endpoint values.
pub fn brent_root<F>(
    mut f: F,
    (lo, f_lo): (f64, f64),
    (hi, f_hi): (f64, f64),
    rel_tol: f64,
    abs_tol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Bracket {
            lo,
            hi,
            f_lo,
            f_hi,
            target: 0.0,
        });
    }
    let (mut a, mut fa, mut b, mut fb) = (lo, f_lo, hi, f_hi);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * (rel_tol * b.abs() + abs_tol);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::numerical(format!(
        "root finder did not converge in {max_iter} iterations (last bracket [{b}, {c}])"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cube_root() {
        let f = |x: f64| Ok(x * x * x - 2.0);
        let r = brent_root(f, (0.0, -2.0), (2.0, 6.0), 1e-15, 0.0, 200).unwrap();
        assert!((r - 2f64.cbrt()).abs() < 1e-14);
    }

    #[test]
    fn few_evaluations_on_smooth_maps() {
        let mut calls = 0;
        let r = brent_root(
            |x: f64| {
                calls += 1;
                Ok((-x).exp() - 0.25)
            },
            (0.0, 0.75),
            (10.0, (-10f64).exp() - 0.25),
            1e-13,
            0.0,
            200,
        )
        .unwrap();
        assert!((r - 4f64.ln()).abs() < 1e-12);
        assert!(calls < 20, "{calls}");
    }

    #[test]
    fn rejects_missing_sign_change() {
        assert!(brent_root(|x| Ok(x), (1.0, 1.0), (2.0, 2.0), 1e-12, 0.0, 10).is_err());
    }
}

//! Bracketed scalar root finding used to invert the monotone shift maps and
//! to locate the peak amplitude.

use crate::error::{Error, Result};

/// Finds a root of `f` in `[lo, hi]` by bisection followed by a safeguarded
/// Newton polish.
///
/// `f(lo)` and `f(hi)` must have opposite signs. Bisection stops once
/// `|f(x)| ≤ abs_tol` or the bracket stops shrinking; Newton steps that leave
/// the bracket or fail to reduce `|f|` are discarded.
pub fn bisect_newton<F, DF>(f: F, df: DF, mut lo: f64, mut hi: f64, abs_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    DF: Fn(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo.is_finite() && f_hi.is_finite()) || f_lo.signum() == f_hi.signum() {
        return Err(Error::numerical(format!("root not bracketed on [{lo}, {hi}]: f = ({f_lo}, {f_hi})")));
    }

    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        x = 0.5 * (lo + hi);
        if x <= lo || x >= hi {
            break;
        }
        let fx = f(x);
        if fx.abs() <= abs_tol {
            break;
        }
        if fx.signum() == f_lo.signum() {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
    }

    let mut best = x;
    let mut best_res = f(x).abs();
    for _ in 0..8 {
        if best_res == 0.0 {
            break;
        }
        let slope = df(best);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let cand = best - f(best) / slope;
        if !(cand >= lo && cand <= hi) {
            break;
        }
        let res = f(cand).abs();
        if res < best_res {
            best = cand;
            best_res = res;
        } else {
            break;
        }
    }
    Ok(best)
}

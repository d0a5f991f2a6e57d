//! Bracketing root finders shared by the solvers.

use crate::{Error, Result};

/// Bisection on `[lo, hi]`. `f(lo)` and `f(hi)` must differ in sign (or one
/// of them must vanish). Stops when the bracket is narrower than `tol` or the
/// midpoint stops moving in floating point.
pub fn bisect<F>(
    what: &'static str,
    f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(Error::NoBracket { what, lo, hi });
    }

    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() <= tol || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence {
        what,
        iterations: max_iter,
        lo,
        hi,
    })
}

/// `n` points spaced logarithmically from `lo` to `hi` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(lo > 0.0 && hi > lo && n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == n {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// `n` points spaced linearly from `lo` to `hi` inclusive.
pub fn lin_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i + 1 == n {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect("sqrt2", |x| x * x - 2.0, 0.0, 2.0, 1e-14, 200).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisect_rejects_missing_bracket() {
        let e = bisect("pos", |x| x * x + 1.0, -1.0, 1.0, 1e-12, 100).unwrap_err();
        assert!(matches!(e, Error::NoBracket { .. }));
    }

    #[test]
    fn bisect_reports_iteration_cap_with_bracket() {
        let e = bisect("cap", |x| x - 0.3, 0.0, 1.0, 0.0, 3).unwrap_err();
        match e {
            Error::NoConvergence { lo, hi, .. } => assert!(lo <= 0.3 && 0.3 <= hi),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn spacing_endpoints_are_exact() {
        let v = log_space(1e-3, 10.0, 7);
        assert_eq!(v[0], 1e-3);
        assert_eq!(v[6], 10.0);
        let w = lin_space(0.0, 1.0, 11);
        assert_eq!(w[10], 1.0);
        assert!((w[5] - 0.5).abs() < 1e-15);
    }
}

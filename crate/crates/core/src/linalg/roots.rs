use crate::error::{GptError, Result};

/// Bisection on a sign-changing bracket `[a, b]`.
///
/// Stops when `|f(x)| ≤ tol` or the bracket is narrower than `tol`.
pub fn bisection_root<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    bisection_root_with_limit(f, a, b, tol).map(|(x, _)| x)
}

/// Same as [`bisection_root`], also returning the number of midpoint
/// evaluations used.
pub fn bisection_root_with_limit<F>(f: F, a: f64, b: f64, tol: f64) -> Result<(f64, usize)>
where
    F: Fn(f64) -> f64,
{
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo.abs() <= tol {
        return Ok((lo, 0));
    }
    if fhi.abs() <= tol {
        return Ok((hi, 0));
    }
    if flo * fhi > 0.0 || flo.is_nan() || fhi.is_nan() {
        return Err(GptError::NotBracketed { fa: flo, fb: fhi });
    }
    let mut iterations = 0;
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            return Ok((mid, iterations));
        }
        iterations += 1;
        let fm = f(mid);
        if fm.abs() <= tol {
            return Ok((mid, iterations));
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
}

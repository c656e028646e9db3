//! Bracketed bisection.

use crate::error::{Error, Result};

/// Outcome of a bisection run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub f: f64,
    pub iterations: u32,
}

/// Bisects `f` on `[lo, hi]` until the bracket collapses to adjacent
/// floating-point numbers (or `f` vanishes exactly).
///
/// The endpoint values must differ in sign; the returned point is the
/// bracket end with the smaller `|f|`.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<Root> {
    let (mut lo, mut hi) = (lo, hi);
    let (mut f_lo, f_hi) = (f(lo), f(hi));
    if !f_lo.is_finite() || !f_hi.is_finite() || f_lo.signum() == f_hi.signum() {
        if f_lo == 0.0 {
            return Ok(Root { x: lo, f: 0.0, iterations: 0 });
        }
        if f_hi == 0.0 {
            return Ok(Root { x: hi, f: 0.0, iterations: 0 });
        }
        return Err(Error::Bracket { lo, hi, f_lo, f_hi });
    }
    let mut f_hi = f_hi;
    let mut iterations = 0;
    while iterations < 2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        iterations += 1;
        if f_mid == 0.0 {
            return Ok(Root { x: mid, f: 0.0, iterations });
        }
        if !f_mid.is_finite() {
            return Err(Error::NonFinite(format!("bisection hit f({mid}) = {f_mid}")));
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    Ok(if f_lo.abs() <= f_hi.abs() {
        Root { x: lo, f: f_lo, iterations }
    } else {
        Root { x: hi, f: f_hi, iterations }
    })
}

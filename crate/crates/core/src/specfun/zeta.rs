use crate::error::{domain, Result};

/// Bernoulli numbers `B_2, B_4, ..., B_16`.
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

/// `(2k)!` for `k = 1..=8`.
const EVEN_FACTORIAL: [f64; 8] = [
    2.0,
    24.0,
    720.0,
    40320.0,
    3628800.0,
    479001600.0,
    87178291200.0,
    20922789888000.0,
];

fn check_args(function: &'static str, s: f64, a: f64) -> Result<()> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(domain(function, format!("need s > 1, got s = {s}")));
    }
    if !(a > 0.0) || !a.is_finite() {
        return Err(domain(function, format!("need a > 0, got a = {a}")));
    }
    Ok(())
}

/// Point where the Euler-Maclaurin tail takes over: `a + N >= 15 max(1, s/4)`.
fn cutoff(s: f64, a: f64) -> (usize, f64) {
    let target = 15.0 * (s / 4.0).max(1.0);
    let n = if a >= target {
        0
    } else {
        (target - a).ceil() as usize
    };
    (n, a + n as f64)
}

/// Hurwitz zeta function `ζ(s, a) = Σ_{k≥0} (k + a)^{-s}` for `s > 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    check_args("hurwitz_zeta", s, a)?;
    Ok(hurwitz_unchecked(s, a))
}

pub(crate) fn hurwitz_unchecked(s: f64, a: f64) -> f64 {
    let (n, x) = cutoff(s, a);
    // the direct part is summed from the small end so that the leading
    // term is added last
    let mut head = 0.0;
    for k in (0..n).rev() {
        head += (a + k as f64).powf(-s);
    }

    let x_pow = x.powf(-s);
    let mut tail = x * x_pow / (s - 1.0) + 0.5 * x_pow;
    // (s)_{2j-1} x^{-s-2j+1}
    let inv_x2 = 1.0 / (x * x);
    let mut rising = s;
    let mut power = x_pow / x;
    for j in 0..BERNOULLI.len() {
        tail += BERNOULLI[j] / EVEN_FACTORIAL[j] * rising * power;
        let k = 2 * j as u32 + 1;
        rising *= (s + k as f64) * (s + k as f64 + 1.0);
        power *= inv_x2;
    }
    head + tail
}

/// Riemann zeta function `ζ(s)` for real `s > 1`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    check_args("riemann_zeta", s, 1.0)?;
    Ok(hurwitz_unchecked(s, 1.0))
}

/// Derivative `∂ζ(s, a)/∂s`.
pub fn hurwitz_zeta_ds(s: f64, a: f64) -> Result<f64> {
    check_args("hurwitz_zeta_ds", s, a)?;
    let (n, x) = cutoff(s, a);
    let mut head = 0.0;
    for k in (0..n).rev() {
        let y = a + k as f64;
        head -= y.ln() * y.powf(-s);
    }

    let ln_x = x.ln();
    let x_pow = x.powf(-s);
    let sm1 = s - 1.0;
    let mut tail = -x * x_pow * (ln_x / sm1 + 1.0 / (sm1 * sm1)) - 0.5 * ln_x * x_pow;

    let inv_x2 = 1.0 / (x * x);
    let mut rising = s;
    let mut log_rising_ds = 1.0 / s;
    let mut power = x_pow / x;
    for j in 0..BERNOULLI.len() {
        let coef = BERNOULLI[j] / EVEN_FACTORIAL[j];
        tail += coef * rising * power * (log_rising_ds - ln_x);
        let k = 2 * j as u32 + 1;
        let (p, q) = (s + k as f64, s + k as f64 + 1.0);
        rising *= p * q;
        log_rising_ds += 1.0 / p + 1.0 / q;
        power *= inv_x2;
    }
    Ok(head + tail)
}

/// Logarithmic derivative `ζ'(s)/ζ(s)` of the Riemann zeta function.
pub fn zeta_log_derivative(s: f64) -> Result<f64> {
    check_args("zeta_log_derivative", s, 1.0)?;
    Ok(hurwitz_zeta_ds(s, 1.0)? / hurwitz_unchecked(s, 1.0))
}

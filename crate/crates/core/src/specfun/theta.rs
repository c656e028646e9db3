use std::f64::consts::PI;

use crate::error::{domain, Error, Result};

/// Below this nome exponent the Poisson-transformed series is summed
/// instead of the direct one; both need only a handful of terms there.
pub(crate) const POISSON_SWITCH: f64 = PI;

const SERIES_EPS: f64 = 1e-18;
const MAX_ORDER: u32 = 3;

/// Which Jacobi theta function at zero argument.
///
/// `θ3(x) = Σ_j exp(-x j²)` and `θ2(x) = Σ_j exp(-x (j + 1/2)²)`, both
/// written in terms of the nome exponent `x = -ln q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    Theta2,
    Theta3,
}

impl ThetaKind {
    fn shift(self) -> f64 {
        match self {
            ThetaKind::Theta2 => 0.5,
            ThetaKind::Theta3 => 0.0,
        }
    }
}

/// `θ3(e^{-x})`.
pub fn theta3(x: f64) -> Result<f64> {
    theta_derivative(ThetaKind::Theta3, 0, x)
}

/// `θ2(e^{-x})`.
pub fn theta2(x: f64) -> Result<f64> {
    theta_derivative(ThetaKind::Theta2, 0, x)
}

/// `d^order/dx^order θ(e^{-x})` for `order <= 3`.
pub fn theta_derivative(kind: ThetaKind, order: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("theta", format!("need x > 0, got x = {x}")));
    }
    if order > MAX_ORDER {
        return Err(Error::Parameter(format!(
            "theta derivative order {order} unsupported (max {MAX_ORDER})"
        )));
    }
    Ok(shifted_theta_derivative(kind.shift(), order, x))
}

/// `d^order/dx^order Σ_{j∈Z} exp(-x (j + φ)²)` for a shift `φ ∈ [0, 1)`.
pub(crate) fn shifted_theta_derivative(phi: f64, order: u32, x: f64) -> f64 {
    if x < POISSON_SWITCH {
        let zero_mode = PI.sqrt() * poisson_mode_derivative(0.0, x, order);
        zero_mode + poisson_modes(phi, order, x, zero_mode.abs())
    } else {
        direct_sum(phi, order, x, false)
    }
}

/// Direct lattice form `(-1)^order Σ_j (j + φ)^{2 order} exp(-x (j + φ)²)`.
///
/// With `skip_origin` the `j + φ = 0` term is dropped (only relevant for
/// `φ = 0`, where it turns `θ3` into `θ3 - 1`).
pub(crate) fn direct_sum(phi: f64, order: u32, x: f64, skip_origin: bool) -> f64 {
    let term = |y: f64| -> f64 {
        let y2 = y * y;
        y2.powi(order as i32) * (-x * y2).exp()
    };
    // the summand y^{2n} e^{-x y^2} decreases once x y^2 > n
    let peak = (order as f64 / x).sqrt();
    let mut sum = 0.0;
    let mut k = 0u32;
    loop {
        let y_right = k as f64 + phi;
        let y_left = k as f64 + 1.0 - phi;
        let mut t = term(y_left);
        if !(skip_origin && y_right == 0.0) {
            t += term(y_right);
        }
        sum += t;
        let past_peak = y_right.min(y_left) > peak;
        if past_peak && (t <= SERIES_EPS * sum.abs() || t == 0.0) {
            break;
        }
        k += 1;
        if k > 100_000 {
            break;
        }
    }
    if order % 2 == 1 {
        -sum
    } else {
        sum
    }
}

/// Non-zero Poisson modes, `√π Σ_{k≥1} 2 cos(2πkφ) d^n/dx^n [x^{-1/2} e^{-π²k²/x}]`.
///
/// `scale` is the magnitude against which the series is truncated.
pub(crate) fn poisson_modes(phi: f64, order: u32, x: f64, scale: f64) -> f64 {
    let mut sum = 0.0;
    for k in 1..200u32 {
        let kf = k as f64;
        let b = PI * PI * kf * kf;
        let t = 2.0 * (2.0 * PI * kf * phi).cos() * PI.sqrt() * poisson_mode_derivative(b, x, order);
        sum += t;
        if b / x > 40.0 && t.abs() <= SERIES_EPS * (scale + sum.abs()) {
            break;
        }
    }
    sum
}

/// `d^n/dx^n [x^{-1/2} exp(-b/x)]`.
pub(crate) fn poisson_mode_derivative(b: f64, x: f64, order: u32) -> f64 {
    // terms c x^p e^{-b/x}; d/dx (x^p e^{-b/x}) = (p x^{p-1} + b x^{p-2}) e^{-b/x}
    let mut terms: Vec<(f64, f64)> = vec![(1.0, -0.5)];
    for _ in 0..order {
        let mut next: Vec<(f64, f64)> = Vec::with_capacity(2 * terms.len());
        for &(c, p) in &terms {
            next.push((c * p, p - 1.0));
            if b != 0.0 {
                next.push((c * b, p - 2.0));
            }
        }
        next.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        next.dedup_by(|a, b| {
            if a.1 == b.1 {
                b.0 += a.0;
                true
            } else {
                false
            }
        });
        terms = next;
    }
    let damping = if b == 0.0 { 1.0 } else { (-b / x).exp() };
    if damping == 0.0 {
        return 0.0;
    }
    let ln_x = x.ln();
    terms
        .iter()
        .map(|&(c, p)| c * (p * ln_x).exp())
        .sum::<f64>()
        * damping
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert!(theta3(0.0).is_err());
        assert!(theta2(-1.0).is_err());
        assert!(theta_derivative(ThetaKind::Theta2, 4, 1.0).is_err());
    }

    #[test]
    fn large_exponent_limit() {
        let t = theta3(100.0).unwrap();
        assert!(t - 1.0 < 1e-40);
        assert!(theta2(800.0).unwrap() >= 0.0);
    }

    #[test]
    fn small_exponent_limit() {
        let x = 0.01;
        let lead = (PI / x).sqrt();
        assert!((theta3(x).unwrap() - lead).abs() <= 2.0 * lead * (-PI * PI / x).exp() + 1e-13);
    }

    #[test]
    fn branches_agree_at_switch() {
        for order in 0..=3 {
            for phi in [0.0, 0.5, 0.17] {
                let x = POISSON_SWITCH;
                let poisson = PI.sqrt() * poisson_mode_derivative(0.0, x, order);
                let poisson = poisson + poisson_modes(phi, order, x, poisson.abs());
                let direct = direct_sum(phi, order, x, false);
                assert!(
                    ((poisson - direct) / direct).abs() < 1e-14,
                    "order {order} phi {phi}: {poisson} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn derivative_signs() {
        for &x in &[0.01, 0.3, 1.0, 3.0, 10.0, 50.0] {
            assert!(theta_derivative(ThetaKind::Theta2, 1, x).unwrap() < 0.0);
            assert!(theta_derivative(ThetaKind::Theta2, 2, x).unwrap() > 0.0);
            assert!(theta_derivative(ThetaKind::Theta2, 3, x).unwrap() < 0.0);
        }
    }

    #[test]
    fn mode_derivative_matches_closed_form() {
        // d/dx x^{-1/2} e^{-b/x} = (-x^{-3/2}/2 + b x^{-5/2}) e^{-b/x}
        let (b, x) = (2.0f64, 0.7f64);
        let expected = (-0.5 * x.powf(-1.5) + b * x.powf(-2.5)) * (-b / x).exp();
        assert!((poisson_mode_derivative(b, x, 1) - expected).abs() < 1e-15);
    }
}

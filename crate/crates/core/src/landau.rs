//! Expansion of the bipartite energy in even powers of `ε = ln Δ`:
//!
//! ```text
//! E_bip(A, e^ε) = E_eq(A) + E2(A) ε² + E4(A) ε⁴ + E6(A) ε⁶ + O(ε⁸)
//! ```
//!
//! The equidistant chain loses stability where `E2` changes sign, at the
//! critical spacing `A_c`; the transition is continuous when `E4(A_c) > 0`.

use crate::error::{Error, Result};
use crate::lattice_energy::{
    bipartite_energy, equidistant_energy, equidistant_energy_quadrature, theta_moments,
    BipartiteChain, MomentTerm,
};
use crate::oracle::richardson_derivative;
use crate::potential::{mie_potential, MieParams, PotentialSpec};
use crate::roots::bisect;
use crate::specfun::{riemann_zeta, zeta_log_derivative};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LandauMethod {
    ClosedForm,
    Quadrature,
    FiniteDifference,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LandauCoefficients {
    pub spacing: f64,
    pub e_eq: f64,
    pub e2: f64,
    pub e4: f64,
    pub e6: Option<f64>,
    pub method: LandauMethod,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionPoint {
    pub a_c: f64,
    pub bracket: (f64, f64),
    pub sign_change_verified: bool,
    pub e4_at_ac: f64,
}

fn check_spacing(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Parameter(format!("mean spacing must be positive, got {a}")));
    }
    Ok(())
}

/// `(2^{k+s} - 1) ζ(s + k)`, i.e. `Σ_{j≥0} (j + ½)^{-(s+k)}`.
fn half_shift_zeta(s: f64, k: f64) -> Result<f64> {
    Ok(((s + k) * std::f64::consts::LN_2).exp_m1() * riemann_zeta(s + k)?)
}

/// `E2`, `E4` for the Mie potential in closed form.
pub fn landau_e2_e4_closed(params: MieParams, spacing: f64) -> Result<LandauCoefficients> {
    check_spacing(spacing)?;
    let MieParams { n, m } = params;
    let two_a = 2.0 * spacing;
    let second = |s: f64| -> Result<f64> {
        Ok(half_shift_zeta(s, 2.0)? * (1.0 + s) * two_a.powf(-s))
    };
    let fourth = |s: f64| -> Result<f64> {
        Ok(half_shift_zeta(s, 4.0)? * (1.0 + s) * (2.0 + s) * (3.0 + s) * two_a.powf(-s))
    };
    let e2 = n * m / (n - m) / 32.0 * (second(n)? - second(m)?);
    let e4 = n * m / (3.0 * (n - m)) / 2048.0 * (fourth(n)? - fourth(m)?) - e2 / 6.0;
    let e_eq = equidistant_energy(&mie_potential(params), spacing)?.value;
    Ok(LandauCoefficients {
        spacing,
        e_eq,
        e2,
        e4,
        e6: None,
        method: LandauMethod::ClosedForm,
    })
}

/// Per-component `(E2, E4, E6)` of `r^{-s}` from the Taylor series of the
/// Hurwitz pair about `½` in `x = -½ tanh(ε/2)`.
fn component_series(s: f64, spacing: f64) -> Result<[f64; 3]> {
    let mut c = [0.0; 3];
    let mut rising = 1.0;
    let mut factorial = 1.0;
    for (k, ck) in c.iter_mut().enumerate() {
        let lo = 2 * k as u32;
        for i in lo..lo + 2 {
            rising *= s + i as f64;
            factorial *= (i + 1) as f64;
        }
        *ck = rising / factorial * 2.0 * half_shift_zeta(s, 2.0 * (k + 1) as f64)?;
    }
    let w = 0.5 * (2.0 * spacing).powf(-s);
    Ok([
        w * c[0] / 16.0,
        w * (c[1] / 256.0 - c[0] / 96.0),
        w * (17.0 * c[0] / 11520.0 - c[1] / 768.0 + c[2] / 4096.0),
    ])
}

/// `E2`, `E4`, `E6` in closed zeta form for any Riesz mixture.
pub fn landau_coefficients_closed(spec: &PotentialSpec, spacing: f64) -> Result<LandauCoefficients> {
    check_spacing(spacing)?;
    let mut e = [0.0; 3];
    for comp in spec.components() {
        let series = component_series(comp.exponent, spacing)?;
        for (acc, v) in e.iter_mut().zip(series) {
            *acc += comp.coefficient * v;
        }
    }
    Ok(LandauCoefficients {
        spacing,
        e_eq: equidistant_energy(spec, spacing)?.value,
        e2: e[0],
        e4: e[1],
        e6: Some(e[2]),
        method: LandauMethod::ClosedForm,
    })
}

/// `dE2/dA`; each component of `E2` scales as `A^{-s}`.
pub fn e2_slope(spec: &PotentialSpec, spacing: f64) -> Result<f64> {
    check_spacing(spacing)?;
    let mut slope = 0.0;
    for comp in spec.components() {
        let [e2, _, _] = component_series(comp.exponent, spacing)?;
        slope -= comp.exponent / spacing * comp.coefficient * e2;
    }
    Ok(slope)
}

/// `E2`, `E4`, `E6` as integrals of `θ2` and its `t`-derivatives against
/// each component's Laplace measure.
pub fn landau_coefficients_quadrature(
    spec: &PotentialSpec,
    spacing: f64,
) -> Result<LandauCoefficients> {
    check_spacing(spacing)?;
    let a2 = spacing * spacing;
    let a4 = a2 * a2;
    let e2_terms = [MomentTerm::new(0.5, 1, 0), MomentTerm::new(1.0, 2, 1)];
    let e4_terms = [
        MomentTerm::new(1.0 / 3.0, 1, 0),
        MomentTerm::new(a2 / 4.0, 2, 0),
        MomentTerm::new(2.0 / 3.0, 2, 1),
        MomentTerm::new(a2, 3, 1),
        MomentTerm::new(a2 / 3.0, 4, 2),
    ];
    let e6_terms = [
        MomentTerm::new(17.0 / 1440.0, 1, 0),
        MomentTerm::new(a2 / 48.0, 2, 0),
        MomentTerm::new(a4 / 192.0, 3, 0),
        MomentTerm::new(17.0 / 720.0, 2, 1),
        MomentTerm::new(a2 / 12.0, 3, 1),
        MomentTerm::new(a4 / 32.0, 4, 1),
        MomentTerm::new(a2 / 36.0, 4, 2),
        MomentTerm::new(a4 / 48.0, 5, 2),
        MomentTerm::new(a4 / 360.0, 6, 3),
    ];
    let scale = 4.0 * a2;
    let mut e = [0.0; 3];
    for comp in spec.components() {
        let s = comp.exponent;
        let i2 = theta_moments(s, scale, 0.5, false, &e2_terms)?.value;
        let i4 = theta_moments(s, scale, 0.5, false, &e4_terms)?.value;
        let i6 = theta_moments(s, scale, 0.5, false, &e6_terms)?.value;
        e[0] += comp.coefficient * (-a2 / 4.0) * i2;
        e[1] += comp.coefficient * (a2 / 16.0) * i4;
        e[2] += comp.coefficient * (-a2 / 4.0) * i6;
    }
    Ok(LandauCoefficients {
        spacing,
        e_eq: equidistant_energy_quadrature(spec, spacing)?.value,
        e2: e[0],
        e4: e[1],
        e6: Some(e[2]),
        method: LandauMethod::Quadrature,
    })
}

/// Initial steps for the 2nd, 4th and 6th difference quotients in `ε`.
pub const FD_STEPS: [f64; 3] = [1e-2, 5e-2, 0.2];

/// `E2`, `E4`, `E6` from extrapolated central differences of the closed-form
/// bipartite energy in `ε`.
pub fn landau_coefficients_finite_difference(
    spec: &PotentialSpec,
    spacing: f64,
    steps: [f64; 3],
) -> Result<(LandauCoefficients, [f64; 3])> {
    check_spacing(spacing)?;
    let energy = |eps: f64| {
        BipartiteChain::from_log_ratio(spacing, eps)
            .and_then(|c| bipartite_energy(spec, &c))
            .map(|e| e.value)
            .unwrap_or(f64::NAN)
    };
    let (d2, r2) = richardson_derivative(energy, 0.0, 2, steps[0])?;
    let (d4, r4) = richardson_derivative(energy, 0.0, 4, steps[1])?;
    let (d6, r6) = richardson_derivative(energy, 0.0, 6, steps[2])?;
    let coefficients = LandauCoefficients {
        spacing,
        e_eq: energy(0.0),
        e2: d2 / 2.0,
        e4: d4 / 24.0,
        e6: Some(d6 / 720.0),
        method: LandauMethod::FiniteDifference,
    };
    Ok((coefficients, [r2 / 2.0, r4 / 24.0, r6 / 720.0]))
}

/// `ln[(2^{2+t} - 1)(1 + t) ζ(t + 2)]`.
pub(crate) fn ln_onset_weight(t: f64) -> Result<f64> {
    Ok(((2.0 + t) * std::f64::consts::LN_2).exp_m1().ln() + t.ln_1p() + riemann_zeta(t + 2.0)?.ln())
}

/// Closed-form zero of `E2` for the Mie potential:
/// `A_c = ½ [w(n)/w(m)]^{1/(n-m)}`, `w(t) = (2^{2+t} - 1)(1 + t) ζ(t + 2)`.
pub fn critical_spacing(params: MieParams) -> Result<f64> {
    let MieParams { n, m } = params;
    Ok(0.5 * ((ln_onset_weight(n)? - ln_onset_weight(m)?) / (n - m)).exp())
}

pub fn critical_point(params: MieParams) -> Result<TransitionPoint> {
    let a_c = critical_spacing(params)?;
    let bracket = (a_c * (1.0 - 1e-3), a_c * (1.0 + 1e-3));
    let below = landau_e2_e4_closed(params, bracket.0)?.e2;
    let above = landau_e2_e4_closed(params, bracket.1)?.e2;
    Ok(TransitionPoint {
        a_c,
        bracket,
        sign_change_verified: below > 0.0 && above < 0.0,
        e4_at_ac: landau_e2_e4_closed(params, a_c)?.e4,
    })
}

/// Zero of the closed-form `E2` located by bisection on `[lo, hi]`.
pub fn critical_point_by_root(params: MieParams, lo: f64, hi: f64) -> Result<f64> {
    let root = bisect(
        |a| landau_e2_e4_closed(params, a).map(|c| c.e2).unwrap_or(f64::NAN),
        lo,
        hi,
    )?;
    Ok(root.x)
}

/// Limit of `A_c` as `n → m⁺`:
/// `exp(ln 2/(2^{2+m} - 1) + 1/(1+m) + ζ'(m+2)/ζ(m+2))`.
pub fn critical_point_limit_n_to_m(m: f64) -> Result<f64> {
    if !(m > 1.0) || !m.is_finite() {
        return Err(Error::Parameter(format!("need m > 1, got {m}")));
    }
    let ln2 = std::f64::consts::LN_2;
    Ok((ln2 / ((2.0 + m) * ln2).exp_m1() + 1.0 / (1.0 + m) + zeta_log_derivative(m + 2.0)?).exp())
}

/// `g(x) = (2^{2+x} - 1) ζ(x+2) / [(2^{4+x} - 1)(2+x)(3+x) ζ(x+4)]`.
pub fn tricritical_g(x: f64) -> Result<f64> {
    Ok(half_shift_zeta(x, 2.0)? / (half_shift_zeta(x, 4.0)? * (2.0 + x) * (3.0 + x)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TricriticalReport {
    pub g_points: usize,
    /// Largest forward difference `g(x_{i+1}) - g(x_i)`; negative when `g`
    /// is strictly decreasing on the grid.
    pub max_g_increment: f64,
    pub pairs_checked: usize,
    pub min_e4_at_ac: f64,
    /// `(n, m, E4(A_c))` for every pair where `E4(A_c) ≤ 0`.
    pub e4_violations: Vec<(f64, f64, f64)>,
}

impl TricriticalReport {
    pub fn is_clean(&self) -> bool {
        self.max_g_increment < 0.0 && self.e4_violations.is_empty()
    }
}

/// Checks that `g` decreases along `x_grid` and that `E4(A_c) > 0` for each
/// `(n, m)` pair with `n > m`.
pub fn tricritical_scan(x_grid: &[f64], pairs: &[(f64, f64)]) -> Result<TricriticalReport> {
    let g: Vec<f64> = x_grid.iter().map(|&x| tricritical_g(x)).collect::<Result<_>>()?;
    let max_g_increment = g
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let mut report = TricriticalReport {
        g_points: g.len(),
        max_g_increment,
        pairs_checked: 0,
        min_e4_at_ac: f64::INFINITY,
        e4_violations: Vec::new(),
    };
    for &(n, m) in pairs {
        let point = critical_point(MieParams::new(n, m)?)?;
        report.pairs_checked += 1;
        report.min_e4_at_ac = report.min_e4_at_ac.min(point.e4_at_ac);
        if !(point.e4_at_ac > 0.0) {
            report.e4_violations.push((n, m, point.e4_at_ac));
        }
    }
    Ok(report)
}

/// `x ∈ [1.01, 60]` in steps of `0.01` and all integer pairs `2 ≤ m < n ≤ 14`.
pub fn default_tricritical_grid() -> (Vec<f64>, Vec<(f64, f64)>) {
    let xs = (101..=6000).map(|i| i as f64 / 100.0).collect();
    let mut pairs = Vec::new();
    for n in 2..=14 {
        for m in 2..n {
            pairs.push((n as f64, m as f64));
        }
    }
    (xs, pairs)
}

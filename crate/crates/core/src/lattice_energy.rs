//! Energy per particle of equidistant and bipartite chains.
//!
//! Two independent routes are provided. The closed form expresses every
//! Riesz component through Riemann and Hurwitz zeta values. The quadrature
//! route integrates the theta-function representation
//!
//! ```text
//! E_bip(A, Δ) = ½ ∫ [θ3(e^{-4A²t}) - 1] dμ(t) + ½ ∫ Σ_j e^{-4A²t (j+δ)²} dμ(t),   δ = 1/(1+Δ)
//! ```
//!
//! over the Laplace measure of each component. On the small-`t` side the
//! Poisson-transformed series is used and its zero mode, which carries the
//! only power-law behaviour, is integrated analytically.

use std::f64::consts::PI;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::potential::{MieParams, PotentialSpec};
use crate::quadrature::{march, Direction, Estimate};
use crate::specfun::{
    hurwitz_zeta, poisson_mode_derivative, riemann_zeta, zeta_log_derivative, POISSON_SWITCH,
};

/// Two interleaved sublattices of period `2A`, gap ratio `Δ = a/b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BipartiteChain {
    spacing: f64,
    ratio: f64,
}

impl BipartiteChain {
    pub fn new(spacing: f64, ratio: f64) -> Result<Self> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::Parameter(format!("mean spacing must be positive, got {spacing}")));
        }
        if !(ratio > 0.0) || !ratio.is_finite() {
            return Err(Error::Parameter(format!("gap ratio must be positive, got {ratio}")));
        }
        Ok(BipartiteChain { spacing, ratio })
    }

    /// Chain with `Δ = e^ε`.
    pub fn from_log_ratio(spacing: f64, log_ratio: f64) -> Result<Self> {
        Self::new(spacing, log_ratio.exp())
    }

    pub fn equidistant(spacing: f64) -> Result<Self> {
        Self::new(spacing, 1.0)
    }

    /// Mean spacing `A = 1/ρ`.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Gap ratio `Δ`.
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// `ε = ln Δ`.
    pub fn log_ratio(&self) -> f64 {
        self.ratio.ln()
    }

    /// `δ = 1/(1+Δ) = b/(2A)`.
    pub fn fraction(&self) -> f64 {
        1.0 / (1.0 + self.ratio)
    }

    /// The alternating gaps `(a, b) = (2AΔ/(1+Δ), 2A/(1+Δ))`.
    pub fn periods(&self) -> (f64, f64) {
        let d = 1.0 + self.ratio;
        (2.0 * self.spacing * self.ratio / d, 2.0 * self.spacing / d)
    }

    pub fn min_gap(&self) -> f64 {
        let (a, b) = self.periods();
        a.min(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyMethod {
    ClosedForm,
    Quadrature,
    BruteForce,
}

/// Energy per particle. An infeasible (hard-core violating) configuration
/// carries `value = +∞` and zero error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyResult {
    pub value: f64,
    pub method: EnergyMethod,
    pub est_error: f64,
}

impl EnergyResult {
    pub fn infinite(method: EnergyMethod) -> Self {
        EnergyResult {
            value: f64::INFINITY,
            method,
            est_error: 0.0,
        }
    }

    pub fn is_infinite(&self) -> bool {
        self.value == f64::INFINITY
    }
}

fn check_spacing(a: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::Parameter(format!("mean spacing must be positive, got {a}")));
    }
    Ok(())
}

/// Lattice sum of `r^{-s}` over the bipartite chain, per particle:
/// `U = (2A)^{-s} [ζ(s) + ½(ζ(s, Δ/(1+Δ)) + ζ(s, 1/(1+Δ)))]`.
pub fn riesz_lattice_sum(s: f64, spacing: f64, ratio: f64) -> Result<f64> {
    let chain = BipartiteChain::new(spacing, ratio)?;
    riesz_sum_chain(s, &chain)
}

fn riesz_sum_chain(s: f64, chain: &BipartiteChain) -> Result<f64> {
    let two_a = 2.0 * chain.spacing;
    let (a, b) = chain.periods();
    let frac_b = 1.0 / (1.0 + chain.ratio);
    let frac_a = chain.ratio / (1.0 + chain.ratio);
    // ζ(s, x) = x^{-s} + ζ(s, 1 + x): the nearest neighbours are summed in
    // real space so that (2A)^{-s} never multiplies an overflowing value
    let zeta = riemann_zeta(s)?;
    let shifted = hurwitz_zeta(s, 1.0 + frac_a)? + hurwitz_zeta(s, 1.0 + frac_b)?;
    Ok(two_a.powf(-s) * (zeta + 0.5 * shifted) + 0.5 * (a.powf(-s) + b.powf(-s)))
}

fn closed_form_error(terms: impl Iterator<Item = f64>) -> f64 {
    8.0 * f64::EPSILON * terms.map(f64::abs).sum::<f64>()
}

/// Equidistant energy `Σ_{j≥1} f(jA) = Σ_k c_k ζ(s_k) / A^{s_k}`.
pub fn equidistant_energy(spec: &PotentialSpec, spacing: f64) -> Result<EnergyResult> {
    check_spacing(spacing)?;
    if let Some(sigma) = spec.hard_core_radius() {
        if spacing < sigma {
            return Ok(EnergyResult::infinite(EnergyMethod::ClosedForm));
        }
    }
    let terms = spec
        .components()
        .iter()
        .map(|c| Ok(c.coefficient * riemann_zeta(c.exponent)? * spacing.powf(-c.exponent)))
        .collect::<Result<Vec<f64>>>()?;
    Ok(EnergyResult {
        value: terms.iter().sum(),
        method: EnergyMethod::ClosedForm,
        est_error: closed_form_error(terms.iter().copied()),
    })
}

/// Closed-form bipartite energy `Σ_k c_k U(s_k, A, Δ)`.
pub fn bipartite_energy(spec: &PotentialSpec, chain: &BipartiteChain) -> Result<EnergyResult> {
    if violates_core(spec, chain) {
        return Ok(EnergyResult::infinite(EnergyMethod::ClosedForm));
    }
    let terms = spec
        .components()
        .iter()
        .map(|c| Ok(c.coefficient * riesz_sum_chain(c.exponent, chain)?))
        .collect::<Result<Vec<f64>>>()?;
    Ok(EnergyResult {
        value: terms.iter().sum(),
        method: EnergyMethod::ClosedForm,
        est_error: closed_form_error(terms.iter().copied()),
    })
}

pub(crate) fn violates_core(spec: &PotentialSpec, chain: &BipartiteChain) -> bool {
    match spec.hard_core_radius() {
        Some(sigma) => chain.min_gap() < sigma,
        None => false,
    }
}

/// One term `coefficient · t^power · ∂_t^order Θ(c t)` of a theta moment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct MomentTerm {
    pub coefficient: f64,
    pub power: u32,
    pub order: u32,
}

impl MomentTerm {
    pub(crate) const fn new(coefficient: f64, power: u32, order: u32) -> Self {
        MomentTerm {
            coefficient,
            power,
            order,
        }
    }
}

/// `∫_0^∞ t^k ∂_t^j Θ(c t) t^{s/2-1}/Γ(s/2) dt` with
/// `Θ(x) = Σ_{i∈Z} exp(-x (i + φ)²)`, minus its `i + φ = 0` term when
/// `skip_origin` is set.
pub(crate) fn theta_moment(
    s: f64,
    scale: f64,
    phi: f64,
    skip_origin: bool,
    t_power: u32,
    order: u32,
) -> Result<Estimate> {
    theta_moments(s, scale, phi, skip_origin, &[MomentTerm::new(1.0, t_power, order)])
}

/// Linear combination of theta moments sharing `s`, `c` and `φ`, integrated
/// as a single integrand.
pub(crate) fn theta_moments(
    s: f64,
    scale: f64,
    phi: f64,
    skip_origin: bool,
    terms: &[MomentTerm],
) -> Result<Estimate> {
    let h = 0.5 * s;
    let ln_gamma_h = ln_gamma(h);
    let t_switch = POISSON_SWITCH / scale;
    let ln_switch = t_switch.ln();

    // zero Poisson mode √π (ct)^{-1/2}, differentiated `order` times in t
    let mut analytic = 0.0;
    let mut analytic_abs = 0.0;
    let mut reach: f64 = 0.0;
    for term in terms {
        let k = term.power as f64;
        let p = k - term.order as f64 + h - 0.5;
        if !(p > 0.0) {
            return Err(Error::Parameter(format!(
                "theta moment diverges at t → 0 (s = {s}, t^{}, order {})",
                term.power, term.order
            )));
        }
        if phi == 0.0 && !skip_origin && term.order == 0 {
            return Err(Error::Parameter(
                "theta moment of θ3 without its constant term diverges".into(),
            ));
        }
        let mut falling = 1.0;
        for i in 0..term.order {
            falling *= -0.5 - i as f64;
        }
        let mut a = PI.sqrt() * scale.powf(-0.5) * falling * (p * ln_switch - ln_gamma_h).exp() / p;
        if skip_origin && term.order == 0 {
            let q = k + h;
            a -= (q * ln_switch - ln_gamma_h).exp() / q;
        }
        analytic += term.coefficient * a;
        analytic_abs += (term.coefficient * a).abs();
        reach = reach.max(k + h + term.order as f64 + 1.0);
    }

    let weighted = move |u: f64, theta: &dyn Fn(u32, f64) -> f64| {
        let x = scale * u.exp();
        terms
            .iter()
            .map(|term| {
                term.coefficient
                    * scale.powi(term.order as i32)
                    * ((term.power as f64 + h) * u - ln_gamma_h).exp()
                    * theta(term.order, x)
            })
            .sum::<f64>()
    };

    let y_min = if phi == 0.0 { 1.0 } else { phi.min(1.0 - phi) };
    let upper = march(
        |u| {
            weighted(u, &|order, x| {
                crate::specfun::theta_direct(phi, order, x, skip_origin)
            })
        },
        ln_switch,
        Direction::Up,
        1.0,
        1e-17,
        analytic_abs,
        |u| scale * y_min * y_min * u.exp() > reach,
    )?;

    let lower = march(
        |u| {
            weighted(u, &|order, x| {
                let mut sum = 0.0;
                for mode in 1..64u32 {
                    let mf = mode as f64;
                    let b = PI * PI * mf * mf;
                    if b / x > 745.0 {
                        break;
                    }
                    sum += 2.0 * (2.0 * PI * mf * phi).cos() * poisson_mode_derivative(b, x, order);
                }
                PI.sqrt() * sum
            })
        },
        ln_switch,
        Direction::Down,
        1.0,
        1e-17,
        analytic_abs + upper.value.abs(),
        |_| true,
    )?;

    Ok(Estimate {
        value: analytic + upper.value + lower.value,
        error: upper.error + lower.error + 4.0 * f64::EPSILON * analytic_abs,
    })
}

/// Bipartite energy by theta-function quadrature, component by component.
pub fn bipartite_energy_quadrature(
    spec: &PotentialSpec,
    chain: &BipartiteChain,
) -> Result<EnergyResult> {
    if violates_core(spec, chain) {
        return Ok(EnergyResult::infinite(EnergyMethod::Quadrature));
    }
    let a = chain.spacing;
    let scale = 4.0 * a * a;
    let delta = chain.fraction();
    let mut value = 0.0;
    let mut error = 0.0;
    for c in spec.components() {
        let lattice = theta_moment(c.exponent, scale, 0.0, true, 0, 0)?;
        let shifted = theta_moment(c.exponent, scale, delta, false, 0, 0)?;
        value += c.coefficient * 0.5 * (lattice.value + shifted.value);
        error += c.coefficient.abs() * 0.5 * (lattice.error + shifted.error);
    }
    Ok(EnergyResult {
        value,
        method: EnergyMethod::Quadrature,
        est_error: error,
    })
}

/// Equidistant energy `½ ∫ [θ3(e^{-A²t}) - 1] dμ(t)` by quadrature.
pub fn equidistant_energy_quadrature(spec: &PotentialSpec, spacing: f64) -> Result<EnergyResult> {
    check_spacing(spacing)?;
    if let Some(sigma) = spec.hard_core_radius() {
        if spacing < sigma {
            return Ok(EnergyResult::infinite(EnergyMethod::Quadrature));
        }
    }
    let mut value = 0.0;
    let mut error = 0.0;
    for c in spec.components() {
        let m = theta_moment(c.exponent, spacing * spacing, 0.0, true, 0, 0)?;
        value += 0.5 * c.coefficient * m.value;
        error += 0.5 * c.coefficient.abs() * m.error;
    }
    Ok(EnergyResult {
        value,
        method: EnergyMethod::Quadrature,
        est_error: error,
    })
}

/// The two theta-moment integrals whose vanishing / positivity make `A` a
/// strict local minimum of the equidistant energy:
/// `∫ t ∂_t θ3(e^{-A²t}) dμ` and `∫ t² ∂²_t θ3(e^{-A²t}) dμ`.
///
/// Also returns the magnitude scale `Σ |c_k| |first_k|` of the first one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimumConditions {
    pub first: f64,
    pub second: f64,
    pub first_scale: f64,
}

pub fn local_minimum_conditions(spec: &PotentialSpec, spacing: f64) -> Result<MinimumConditions> {
    check_spacing(spacing)?;
    let scale = spacing * spacing;
    let mut out = MinimumConditions {
        first: 0.0,
        second: 0.0,
        first_scale: 0.0,
    };
    for c in spec.components() {
        let first = theta_moment(c.exponent, scale, 0.0, false, 1, 1)?.value;
        let second = theta_moment(c.exponent, scale, 0.0, false, 2, 2)?.value;
        out.first += c.coefficient * first;
        out.first_scale += (c.coefficient * first).abs();
        out.second += c.coefficient * second;
    }
    Ok(out)
}

/// `A_min = [ζ(n)/ζ(m)]^{1/(n-m)}` and `E_min = -ζ(n)^{m/(m-n)} ζ(m)^{n/(n-m)}`.
pub fn find_a_min(params: MieParams) -> Result<(f64, f64)> {
    let MieParams { n, m } = params;
    let ln_zn = riemann_zeta(n)?.ln();
    let ln_zm = riemann_zeta(m)?.ln();
    let a_min = ((ln_zn - ln_zm) / (n - m)).exp();
    let e_min = -((m * ln_zn - n * ln_zm) / (m - n)).exp();
    Ok((a_min, e_min))
}

/// Limit of `A_min` as `n → m⁺`: `exp(ζ'(m)/ζ(m))`.
pub fn a_min_limit_n_to_m(m: f64) -> Result<f64> {
    if !(m > 1.0) || !m.is_finite() {
        return Err(Error::Parameter(format!("need m > 1, got {m}")));
    }
    Ok(zeta_log_derivative(m)?.exp())
}

/// Golden-section minimisation of the equidistant energy on `[lo, hi]`.
pub fn minimize_equidistant(spec: &PotentialSpec, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let f = |a: f64| equidistant_energy(spec, a).map(|e| e.value);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    while b - a > 1e-12 * (a.abs() + b.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

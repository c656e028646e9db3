//! Brute-force validators: truncated direct lattice sums and extrapolated
//! finite-difference derivatives.
//!
//! Lattice sums are of the form `Σ_{j>J} (αj + c)^{-s}`. The omitted tail is
//! replaced by the midpoint integral `∫_{J+½}^∞ (αx + c)^{-s} dx`. For a
//! decreasing convex summand the residual error `ε` satisfies
//! `0 ≤ ε ≤ [g''(J+½) + |g'(J+½)|] / 24`, which is the reported bound.

use crate::error::{Error, Result};
use crate::lattice_energy::{violates_core, BipartiteChain, EnergyMethod, EnergyResult};
use crate::potential::PotentialSpec;

const START_TERMS: usize = 64;
const MAX_TERMS: usize = 1 << 26;

/// How far a direct sum was carried and the resulting error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPlan {
    pub j_max: usize,
    pub tail_bound: f64,
    pub target_rel: f64,
}

/// Neumaier-compensated accumulator.
#[derive(Default)]
struct Accumulator {
    sum: f64,
    carry: f64,
}

impl Accumulator {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `Σ_{j=first}^{J} (αj + c)^{-s}` plus the midpoint tail estimate, and the
/// bound on the remaining error.
fn power_progression(s: f64, alpha: f64, offset: f64, first: usize, j_max: usize) -> (f64, f64) {
    let mut acc = Accumulator::default();
    for j in (first..=j_max).rev() {
        acc.add((alpha * j as f64 + offset).powf(-s));
    }
    let y = alpha * (j_max as f64 + 0.5) + offset;
    let tail = y.powf(1.0 - s) / (alpha * (s - 1.0));
    acc.add(tail);
    let d1 = s * alpha * y.powf(-s - 1.0);
    let d2 = s * (s + 1.0) * alpha * alpha * y.powf(-s - 2.0);
    (acc.value(), (d1 + d2) / 24.0 + 2.0 * f64::EPSILON * acc.value().abs())
}

/// Lattice sum of `r^{-s}` over a bipartite chain carried to `j_max` cells.
fn component_sum(s: f64, chain: &BipartiteChain, j_max: usize) -> (f64, f64) {
    let alpha = 2.0 * chain.spacing();
    let (a, b) = chain.periods();
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let (same, e_same) = power_progression(s, alpha, 0.0, 1, j_max);
    let (near, e_near) = power_progression(s, alpha, lo, 0, j_max);
    let (far, e_far) = power_progression(s, alpha, hi, 0, j_max);
    (same + 0.5 * (near + far), e_same + 0.5 * (e_near + e_far))
}

/// Direct sum at a fixed number of cells, with its error bound.
pub fn partial_bipartite_sum(
    spec: &PotentialSpec,
    chain: &BipartiteChain,
    j_max: usize,
) -> (f64, f64) {
    let mut value = 0.0;
    let mut bound = 0.0;
    for c in spec.components() {
        let (v, e) = component_sum(c.exponent, chain, j_max);
        value += c.coefficient * v;
        bound += c.coefficient.abs() * e;
    }
    (value, bound)
}

fn check_target(target_rel: f64) -> Result<()> {
    if !(target_rel >= 1e-12) {
        return Err(Error::Parameter(format!(
            "target relative error must be at least 1e-12, got {target_rel}"
        )));
    }
    Ok(())
}

/// Direct bipartite energy, doubling the truncation until the error bound
/// falls below `target_rel` of the summed magnitudes.
pub fn direct_bipartite_sum_with_plan(
    spec: &PotentialSpec,
    chain: &BipartiteChain,
    target_rel: f64,
) -> Result<(EnergyResult, TruncationPlan)> {
    check_target(target_rel)?;
    if violates_core(spec, chain) {
        let plan = TruncationPlan {
            j_max: 0,
            tail_bound: 0.0,
            target_rel,
        };
        return Ok((EnergyResult::infinite(EnergyMethod::BruteForce), plan));
    }
    let mut j_max = START_TERMS;
    loop {
        let mut value = 0.0;
        let mut bound = 0.0;
        let mut magnitude = 0.0;
        for c in spec.components() {
            let (v, e) = component_sum(c.exponent, chain, j_max);
            value += c.coefficient * v;
            bound += c.coefficient.abs() * e;
            magnitude += (c.coefficient * v).abs();
        }
        if bound <= target_rel * value.abs().max(f64::MIN_POSITIVE) || bound <= target_rel * 1e-3 * magnitude {
            let plan = TruncationPlan {
                j_max,
                tail_bound: bound,
                target_rel,
            };
            let result = EnergyResult {
                value,
                method: EnergyMethod::BruteForce,
                est_error: bound,
            };
            return Ok((result, plan));
        }
        if j_max >= MAX_TERMS {
            return Err(Error::Quadrature(format!(
                "direct sum did not reach relative error {target_rel} within {MAX_TERMS} cells"
            )));
        }
        j_max *= 2;
    }
}

pub fn direct_bipartite_sum(
    spec: &PotentialSpec,
    chain: &BipartiteChain,
    target_rel: f64,
) -> Result<EnergyResult> {
    direct_bipartite_sum_with_plan(spec, chain, target_rel).map(|(e, _)| e)
}

/// `Σ_{j≥0} (j + a)^{-s}` by direct summation to `j_max` plus the corrected tail.
pub fn direct_hurwitz_sum(s: f64, a: f64, j_max: usize) -> Result<(f64, f64)> {
    if !(s > 1.0) || !(a > 0.0) {
        return Err(crate::error::domain(
            "direct_hurwitz_sum",
            format!("need s > 1 and a > 0, got s = {s}, a = {a}"),
        ));
    }
    Ok(power_progression(s, 1.0, a, 0, j_max))
}

fn binomial(k: u32, i: u32) -> f64 {
    (0..i).fold(1.0, |acc, t| acc * (k - t) as f64 / (t + 1) as f64)
}

fn central_difference<F: Fn(f64) -> f64>(f: &F, x0: f64, order: u32, h: f64) -> Result<f64> {
    let mut acc = 0.0;
    for i in 0..=order {
        let x = x0 + (0.5 * order as f64 - i as f64) * h;
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::NonFinite(format!("function value {y} at {x}")));
        }
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(order, i) * y;
    }
    Ok(acc / h.powi(order as i32))
}

const MAX_LEVELS: usize = 12;

/// Derivative of order `1..=6` at `x0` by central differences with step
/// `h0, h0/2, …` and Richardson extrapolation in `h²`.
///
/// Returns `(value, error estimate)`. Refinement stops once the diagonal
/// of the tableau starts to diverge, which is where rounding takes over.
pub fn richardson_derivative<F: Fn(f64) -> f64>(
    f: F,
    x0: f64,
    order: u32,
    h0: f64,
) -> Result<(f64, f64)> {
    if !(1..=6).contains(&order) {
        return Err(Error::Parameter(format!("derivative order must be 1..=6, got {order}")));
    }
    if !(h0 > 0.0) || !h0.is_finite() {
        return Err(Error::Parameter(format!("initial step must be positive, got {h0}")));
    }
    let mut prev: Vec<f64> = vec![central_difference(&f, x0, order, h0)?];
    let mut best = (prev[0], f64::INFINITY);
    let mut h = h0;
    for level in 1..MAX_LEVELS {
        h *= 0.5;
        let mut row = vec![central_difference(&f, x0, order, h)?];
        let mut factor = 1.0;
        for j in 1..=level {
            factor *= 4.0;
            let t = row[j - 1] + (row[j - 1] - prev[j - 1]) / (factor - 1.0);
            let err = (t - row[j - 1]).abs().max((t - prev[j - 1]).abs());
            if err <= best.1 {
                best = (t, err);
            }
            row.push(t);
        }
        if (row[level] - prev[level - 1]).abs() >= 2.0 * best.1 {
            break;
        }
        prev = row;
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice_energy::riesz_lattice_sum;
    use crate::potential::{mie_potential, MieParams, RieszComponent};
    use crate::specfun::{hurwitz_zeta, riemann_zeta};

    fn single(s: f64) -> PotentialSpec {
        PotentialSpec::from_components(vec![RieszComponent::new(1.0, s).unwrap()]).unwrap()
    }

    #[test]
    fn hurwitz_by_summation() {
        let (v, bound) = direct_hurwitz_sum(7.0, 0.3, 1_000_000).unwrap();
        let z = hurwitz_zeta(7.0, 0.3).unwrap();
        assert!(((v - z) / z).abs() < 1e-13);
        assert!(bound < 1e-12 * z);
        let (v2, b2) = direct_hurwitz_sum(2.0, 1.0, 1000).unwrap();
        let err = riemann_zeta(2.0).unwrap() - v2;
        assert!(err <= 0.0 && -err <= b2 && b2 < 1e-10);
    }

    #[test]
    fn equidistant_reduction() {
        for s in [2.0, 6.0, 12.0] {
            let chain = BipartiteChain::equidistant(1.3).unwrap();
            let e = direct_bipartite_sum(&single(s), &chain, 1e-12).unwrap().value;
            let z = riemann_zeta(s).unwrap() / 1.3f64.powf(s);
            assert!(((e - z) / z).abs() < 1e-12);
        }
    }

    #[test]
    fn riesz_sum_example() {
        let chain = BipartiteChain::new(1.0, 2.0).unwrap();
        let (e, plan) = direct_bipartite_sum_with_plan(&single(6.0), &chain, 1e-12).unwrap();
        let u = riesz_lattice_sum(6.0, 1.0, 2.0).unwrap();
        assert!(((e.value - u) / u).abs() < 1e-12);
        assert!(plan.tail_bound <= plan.target_rel * e.value.abs());
        let (long, _) = partial_bipartite_sum(&single(6.0), &chain, 1_000_000);
        assert!(((long - u) / u).abs() < 1e-13);
    }

    #[test]
    fn exchange_symmetric() {
        let spec = mie_potential(MieParams::new(12.0, 6.0).unwrap());
        let x = direct_bipartite_sum(&spec, &BipartiteChain::new(1.2, 2.0).unwrap(), 1e-12).unwrap();
        let y = direct_bipartite_sum(&spec, &BipartiteChain::new(1.2, 0.5).unwrap(), 1e-12).unwrap();
        assert_eq!(x.value, y.value);
    }

    #[test]
    fn doubling_stays_within_bound() {
        let spec = mie_potential(MieParams::new(6.0, 2.0).unwrap());
        let chain = BipartiteChain::new(0.9, 3.0).unwrap();
        for j in [16usize, 128, 1024] {
            let (v1, b1) = partial_bipartite_sum(&spec, &chain, j);
            let (v2, _) = partial_bipartite_sum(&spec, &chain, 2 * j);
            assert!((v1 - v2).abs() <= b1, "J={j}");
        }
    }

    #[test]
    fn rejects_tight_target() {
        let chain = BipartiteChain::equidistant(1.0).unwrap();
        assert!(direct_bipartite_sum(&single(6.0), &chain, 1e-14).is_err());
    }

    #[test]
    fn polynomial_derivatives() {
        let (d2, _) = richardson_derivative(|x| x * x, 0.0, 2, 1e-2).unwrap();
        assert!((d2 - 2.0).abs() < 1e-10);
        let (d4, _) = richardson_derivative(|x| x.powi(4), 0.0, 4, 1e-2).unwrap();
        assert!((d4 - 24.0).abs() < 1e-8);
        let (d6, _) = richardson_derivative(|x| x.powi(6) + x, 0.3, 6, 0.2).unwrap();
        assert!((d6 - 720.0).abs() < 1e-6);
    }

    #[test]
    fn transcendental_derivatives() {
        for order in 1..=6u32 {
            let (d, err) = richardson_derivative(f64::exp, 0.5, order, 0.25).unwrap();
            let exact = 0.5f64.exp();
            assert!((d - exact).abs() < 1e-5 * exact, "order {order}: {d} ± {err}");
        }
        assert!(richardson_derivative(f64::exp, 0.0, 7, 0.1).is_err());
        assert!(richardson_derivative(|x: f64| 1.0 / x, 0.0, 2, 0.1).is_err());
    }
}

//! Bipartite phase of the Mie chain: the gap ratio `Δ(A)` that minimises the
//! energy at fixed spacing, its onset at `A_c` and its large-`A` asymptote.
//!
//! Writing `δ = 1/(1+Δ)` and `D_s(δ) = ζ(s, δ) - ζ(s, 1-δ)`, stationarity of
//! the bipartite energy in `Δ` reads
//!
//! ```text
//! (n - m) ln(2A) = ln D_{n+1}(δ) - ln D_{m+1}(δ)
//! ```
//!
//! The right side decreases from `+∞` at `δ → 0` to `(n - m) ln(2A_c)` at
//! `δ = ½`, so a solution with `δ < ½` exists exactly when `A > A_c`.

use crate::error::{Error, Result};
use crate::fit::{fit_power_law, geometric_grid, PowerLawFit};
use crate::landau::{critical_spacing, e2_slope, landau_e2_e4_closed, ln_onset_weight};
use crate::lattice_energy::{bipartite_energy, equidistant_energy, BipartiteChain};
use crate::potential::{mie_potential, MieParams};
use crate::roots::bisect;
use crate::specfun::{hurwitz_zeta, riemann_zeta};

const SERIES_TERMS: usize = 24;
/// Below this distance from `δ = ½` the expansion about `½` is used.
const HALF_SERIES_RADIUS: f64 = 0.05;
/// Below this `δ` the expansion about `δ = 0` is used.
const UNIT_SERIES_RADIUS: f64 = 0.1;
/// Offsets `A - A_c` below this fraction of `A_c` count as the onset itself.
pub const ONSET_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// Equidistant chain, `Δ = 1`.
    Trivial,
    /// Interior stationary point of the unconstrained energy.
    Bipartite,
    /// Pinned at the hard-core limit `Δ = 2A/σ - 1`.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaSolution {
    pub spacing: f64,
    pub ratio: f64,
    /// `Δ - 1`, carried separately because it is small near the onset.
    pub ratio_excess: f64,
    pub residual: f64,
    pub branch: Branch,
}

impl DeltaSolution {
    pub(crate) fn trivial(spacing: f64) -> Self {
        DeltaSolution {
            spacing,
            ratio: 1.0,
            ratio_excess: 0.0,
            residual: 0.0,
            branch: Branch::Trivial,
        }
    }

    pub fn chain(&self) -> Result<BipartiteChain> {
        BipartiteChain::new(self.spacing, self.ratio)
    }
}

/// A point of `(0, ½]` held as both `δ` and `x = ½ - δ`; whichever of the
/// two was the independent variable is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct HalfPoint {
    pub delta: f64,
    pub x: f64,
}

impl HalfPoint {
    pub(crate) fn from_delta(delta: f64) -> Self {
        HalfPoint { delta, x: 0.5 - delta }
    }

    pub(crate) fn from_x(x: f64) -> Self {
        HalfPoint { delta: 0.5 - x, x }
    }

    /// `(Δ, Δ - 1)` for `Δ = (1 - δ)/δ`.
    pub(crate) fn ratio(&self) -> (f64, f64) {
        if self.x < 0.25 {
            let excess = 2.0 * self.x / self.delta;
            (1.0 + excess, excess)
        } else {
            let ratio = (1.0 - self.delta) / self.delta;
            (ratio, (1.0 - 2.0 * self.delta) / self.delta)
        }
    }
}

/// Series data for `D_s` at one exponent `s`.
#[derive(Debug, Clone)]
struct Expansions {
    s: f64,
    /// `D_s(½ - x) = 2 a_0 x (1 + Σ_{q≥1} half[q-1] x^{2q})`.
    half: [f64; SERIES_TERMS],
    /// `ζ(s, 1+δ) - ζ(s, 1-δ) = -2 δ Σ_q unit[q] δ^{2q}`.
    unit: [f64; SERIES_TERMS],
}

impl Expansions {
    fn new(s: f64) -> Result<Self> {
        let mut half = [0.0; SERIES_TERMS];
        let mut unit = [0.0; SERIES_TERMS];
        // (s)_p / p! for odd p, built incrementally
        let mut pochhammer = s;
        let mut a0 = 0.0;
        for q in 0..=SERIES_TERMS {
            let p = (2 * q + 1) as f64;
            if q > 0 {
                pochhammer *= (s + p - 2.0) * (s + p - 1.0) / ((p - 1.0) * p);
            }
            let z = riemann_zeta(s + p)?;
            let half_term = pochhammer * ((s + p) * std::f64::consts::LN_2).exp_m1() * z;
            if q == 0 {
                a0 = half_term;
            } else {
                half[q - 1] = half_term / a0;
            }
            if q < SERIES_TERMS {
                unit[q] = pochhammer * z;
            }
        }
        Ok(Expansions { s, half, unit })
    }

    /// `Σ_{q≥1} half[q-1] x^{2q}`.
    fn half_excess(&self, x: f64) -> f64 {
        let y = x * x;
        self.half.iter().rev().fold(0.0, |acc, c| (acc + c) * y)
    }

    /// `y_s(δ) = δ^s [ζ(s, 1+δ) - ζ(s, 1-δ)]`, in `(-1, 0]`.
    fn scaled_gap(&self, delta: f64) -> Result<f64> {
        let diff = if delta <= UNIT_SERIES_RADIUS {
            let y = delta * delta;
            -2.0 * delta * self.unit.iter().rev().fold(0.0, |acc, c| acc * y + c)
        } else {
            hurwitz_zeta(self.s, 1.0 + delta)? - hurwitz_zeta(self.s, 1.0 - delta)?
        };
        Ok(delta.powf(self.s) * diff)
    }
}

/// Both sides of the stationarity condition for one `(n, m)` pair.
#[derive(Debug, Clone)]
pub struct StationarityBalance {
    params: MieParams,
    upper: Expansions,
    lower: Expansions,
    /// `(n - m) ln(2 A_c)`.
    onset_log_ratio: f64,
    a_c: f64,
}

impl StationarityBalance {
    pub fn new(params: MieParams) -> Result<Self> {
        let MieParams { n, m } = params;
        Ok(StationarityBalance {
            params,
            upper: Expansions::new(n + 1.0)?,
            lower: Expansions::new(m + 1.0)?,
            onset_log_ratio: ln_onset_weight(n)? - ln_onset_weight(m)?,
            a_c: critical_spacing(params)?,
        })
    }

    pub fn params(&self) -> MieParams {
        self.params
    }

    pub fn critical_spacing(&self) -> f64 {
        self.a_c
    }

    fn gap(&self) -> f64 {
        self.params.n - self.params.m
    }

    /// `ln D_{n+1}(δ) - ln D_{m+1}(δ) - (n - m) ln(2A_c)`, non-negative.
    pub(crate) fn excess(&self, p: HalfPoint) -> Result<f64> {
        if p.x <= HALF_SERIES_RADIUS {
            Ok(self.upper.half_excess(p.x).ln_1p() - self.lower.half_excess(p.x).ln_1p())
        } else {
            Ok(self.scaled(p)? - self.gap() * p.delta.ln() - self.onset_log_ratio)
        }
    }

    /// `G(δ) = ln D_{n+1}(δ) - ln D_{m+1}(δ) + (n - m) ln δ`, rising from `0`
    /// at `δ = 0` to `(n - m) ln A_c` at `δ = ½`.
    pub(crate) fn scaled(&self, p: HalfPoint) -> Result<f64> {
        if p.x <= HALF_SERIES_RADIUS {
            return Ok(self.onset_log_ratio + self.excess(p)? + self.gap() * p.delta.ln());
        }
        Ok(self.upper.scaled_gap(p.delta)?.ln_1p() - self.lower.scaled_gap(p.delta)?.ln_1p())
    }

    /// `G` at a plain `δ ∈ (0, ½]`.
    pub fn scaled_at(&self, delta: f64) -> Result<f64> {
        self.scaled(HalfPoint::from_delta(delta))
    }

    /// Stationarity residual `(n - m) ln(2A) - [ln D_{n+1} - ln D_{m+1}]` at
    /// `A = A_c + offset`, as a function of `δ`.
    pub fn residual(&self, offset: f64, delta: f64) -> Result<f64> {
        Ok(self.gap() * (offset / self.a_c).ln_1p() - self.excess(HalfPoint::from_delta(delta))?)
    }

    /// `Δ(A)` at `A = A_c + offset`.
    pub fn solve_offset(&self, offset: f64) -> Result<DeltaSolution> {
        self.solve_at(self.a_c + offset, offset)
    }

    fn solve_at(&self, spacing: f64, offset: f64) -> Result<DeltaSolution> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::Parameter(format!("mean spacing must be positive, got {spacing}")));
        }
        if offset <= ONSET_TOLERANCE * self.a_c {
            return Ok(DeltaSolution::trivial(spacing));
        }
        let target = self.gap() * (offset / self.a_c).ln_1p();
        let f = |p: HalfPoint| self.excess(p).map(|e| target - e).unwrap_or(f64::NAN);
        let quarter = f(HalfPoint::from_delta(0.25));
        let point = if quarter <= 0.0 {
            let r = bisect(|x| f(HalfPoint::from_x(x)), 0.0, 0.25)?;
            HalfPoint::from_x(r.x)
        } else {
            // Δ < 2A - 1 places the root above δ = 1/(2A)
            let lo = (0.25 / spacing).min(0.125);
            let r = bisect(|d| f(HalfPoint::from_delta(d)), lo, 0.25)?;
            HalfPoint::from_delta(r.x)
        };
        let (mut ratio, mut ratio_excess) = point.ratio();
        if point.x >= 0.25 {
            // far from onset Δ ≈ 2A - 1; subtract the gap rather than invert δ
            let gap = (self.scaled(point)? / self.gap()).exp_m1() / point.delta;
            ratio = (2.0 * spacing - 1.0) - gap;
            ratio_excess = ratio - 1.0;
        }
        Ok(DeltaSolution {
            spacing,
            ratio,
            ratio_excess,
            residual: f(point).abs(),
            branch: Branch::Bipartite,
        })
    }

    /// `(2A - 1) - Δ(A)` without cancellation: at a solution
    /// `ln(2Aδ) = G(δ)/(n - m)`, so the gap is `expm1(G/(n - m)) / δ`.
    pub fn asymptote_gap(&self, spacing: f64) -> Result<f64> {
        let sol = self.solve(spacing)?;
        if sol.branch == Branch::Trivial {
            return Ok(2.0 * spacing - 2.0);
        }
        let delta = 1.0 / (1.0 + sol.ratio);
        Ok((self.scaled_at(delta)? / self.gap()).exp_m1() / delta)
    }

    pub fn solve(&self, spacing: f64) -> Result<DeltaSolution> {
        if !(spacing > 0.0) || !spacing.is_finite() {
            return Err(Error::Parameter(format!("mean spacing must be positive, got {spacing}")));
        }
        if spacing <= self.a_c {
            return Ok(DeltaSolution::trivial(spacing));
        }
        self.solve_at(spacing, spacing - self.a_c)
    }
}

/// Energy-minimising `Δ` at mean spacing `A`.
pub fn solve_delta(params: MieParams, spacing: f64) -> Result<DeltaSolution> {
    StationarityBalance::new(params)?.solve(spacing)
}

/// `Δ` at `A = A_c + offset`, with the offset taken exactly.
pub fn solve_delta_offset(params: MieParams, offset: f64) -> Result<DeltaSolution> {
    StationarityBalance::new(params)?.solve_offset(offset)
}

/// `Δ(A)` over a grid; failures stay in their slot.
pub fn delta_sweep(params: MieParams, grid: &[f64]) -> Result<Vec<Result<DeltaSolution>>> {
    let balance = StationarityBalance::new(params)?;
    Ok(grid.iter().map(|&a| balance.solve(a)).collect())
}

/// Power-law fit of `Δ - 1` against `A - A_c`, with the amplitude
/// `√(-E2'(A_c) / (2 E4(A_c)))` expected from the Landau expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaFit {
    pub fit: PowerLawFit,
    pub amplitude: f64,
}

pub fn fit_beta(params: MieParams, window: (f64, f64), n_points: usize) -> Result<BetaFit> {
    let (lo, hi) = window;
    if !(lo > 0.0) || !(hi > lo) {
        return Err(Error::Parameter(format!("need 0 < lo < hi, got ({lo}, {hi})")));
    }
    let balance = StationarityBalance::new(params)?;
    let offsets = geometric_grid(lo, hi, n_points);
    let mut xs = Vec::with_capacity(offsets.len());
    let mut ys = Vec::with_capacity(offsets.len());
    for &h in &offsets {
        if let Ok(sol) = balance.solve_offset(h) {
            if sol.branch == Branch::Bipartite && sol.ratio_excess > 0.0 {
                xs.push(h);
                ys.push(sol.ratio_excess);
            }
        }
    }
    if xs.len() < n_points {
        return Err(Error::DegenerateFit(format!(
            "only {} of {n_points} offsets solved",
            xs.len()
        )));
    }
    let mut fit = fit_power_law(&xs, &ys)?;
    fit.window = window;
    Ok(BetaFit {
        fit,
        amplitude: landau_amplitude(params)?,
    })
}

/// `√(-E2'(A_c) / (2 E4(A_c)))`.
pub fn landau_amplitude(params: MieParams) -> Result<f64> {
    let a_c = critical_spacing(params)?;
    let slope = e2_slope(&mie_potential(params), a_c)?;
    let e4 = landau_e2_e4_closed(params, a_c)?.e4;
    Ok((-slope / (2.0 * e4)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Equidistant,
    Bipartite,
}

impl Phase {
    pub fn label(self) -> &'static str {
        match self {
            Phase::Equidistant => "eq",
            Phase::Bipartite => "bip",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyPoint {
    pub spacing: f64,
    pub ground: f64,
    /// Equidistant energy, also past `A_c` where it is no longer the ground state.
    pub equidistant: f64,
    pub phase: Phase,
    pub ratio: f64,
}

/// Ground-state energy per particle along a grid of spacings.
pub fn energy_curve(params: MieParams, grid: &[f64]) -> Result<Vec<Result<EnergyPoint>>> {
    let balance = StationarityBalance::new(params)?;
    let spec = mie_potential(params);
    Ok(grid
        .iter()
        .map(|&a| {
            let equidistant = equidistant_energy(&spec, a)?.value;
            let sol = balance.solve(a)?;
            if sol.branch == Branch::Trivial {
                return Ok(EnergyPoint {
                    spacing: a,
                    ground: equidistant,
                    equidistant,
                    phase: Phase::Equidistant,
                    ratio: 1.0,
                });
            }
            let ground = bipartite_energy(&spec, &sol.chain()?)?.value;
            Ok(EnergyPoint {
                spacing: a,
                ground,
                equidistant,
                phase: Phase::Bipartite,
                ratio: sol.ratio,
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lj() -> MieParams {
        MieParams::new(12.0, 6.0).unwrap()
    }

    fn energy(a: f64, ratio: f64) -> f64 {
        bipartite_energy(&mie_potential(lj()), &BipartiteChain::new(a, ratio).unwrap())
            .unwrap()
            .value
    }

    #[test]
    fn regimes_of_the_balance_agree() {
        let b = StationarityBalance::new(MieParams::new(9.0, 4.0).unwrap()).unwrap();
        for d in [0.04, 0.0999, 0.1001, 0.2, 0.449, 0.451] {
            let p = HalfPoint::from_delta(d);
            let direct = {
                let dn = hurwitz_zeta(10.0, d).unwrap() - hurwitz_zeta(10.0, 1.0 - d).unwrap();
                let dm = hurwitz_zeta(5.0, d).unwrap() - hurwitz_zeta(5.0, 1.0 - d).unwrap();
                dn.ln() - dm.ln() - b.onset_log_ratio
            };
            assert!((b.excess(p).unwrap() - direct).abs() < 1e-12, "δ={d}");
        }
        assert!(b.scaled_at(0.5).unwrap() - 5.0 * b.critical_spacing().ln() < 1e-14);
        assert!(b.scaled_at(1e-3).unwrap() > 0.0);
    }

    #[test]
    fn onset_is_continuous() {
        let a_c = critical_spacing(lj()).unwrap();
        let sol = solve_delta_offset(lj(), 1e-12).unwrap();
        assert!(sol.ratio_excess <= 1e-5);
        assert_eq!(solve_delta(lj(), a_c).unwrap().branch, Branch::Trivial);
        assert_eq!(solve_delta(lj(), 1.0).unwrap().ratio, 1.0);
    }

    #[test]
    fn solution_is_a_minimum() {
        let sol = solve_delta(lj(), 2.0).unwrap();
        assert!(sol.residual <= 1e-11);
        let e = energy(2.0, sol.ratio);
        assert!(e < energy(2.0, sol.ratio * (1.0 + 1e-3)));
        assert!(e < energy(2.0, sol.ratio * (1.0 - 1e-3)));
        assert!(e < energy(2.0, 1.0));
        let h = 1e-3 * sol.ratio;
        let curvature =
            energy(2.0, sol.ratio + h) - 2.0 * e + energy(2.0, sol.ratio - h);
        assert!(curvature > 0.0);
    }

    #[test]
    fn large_spacing_asymptote() {
        let sol = solve_delta(lj(), 50.0).unwrap();
        assert!((sol.ratio - 99.0).abs() < 0.01);
        let balance = StationarityBalance::new(lj()).unwrap();
        let mut last = f64::INFINITY;
        for a in [10.0, 30.0, 100.0, 300.0, 1000.0] {
            let gap = balance.asymptote_gap(a).unwrap();
            assert!(gap > 0.0 && gap < last, "A={a}: {gap}");
            assert!(solve_delta(lj(), a).unwrap().ratio <= 2.0 * a - 1.0);
            last = gap;
        }
        let direct = 2.0 * 10.0 - 1.0 - solve_delta(lj(), 10.0).unwrap().ratio;
        assert!((balance.asymptote_gap(10.0).unwrap() - direct).abs() < 1e-12);
    }

    #[test]
    fn sweep_shape() {
        let grid: Vec<f64> = (0..200).map(|i| 0.9 + 0.05 * i as f64).collect();
        let a_c = critical_spacing(lj()).unwrap();
        let sols: Vec<DeltaSolution> = delta_sweep(lj(), &grid)
            .unwrap()
            .into_iter()
            .map(Result::unwrap)
            .collect();
        for w in sols.windows(2) {
            assert!(w[0].ratio <= w[1].ratio);
        }
        for s in &sols {
            if s.spacing <= a_c {
                assert_eq!(s.ratio, 1.0);
            } else {
                assert!(s.ratio < 2.0 * s.spacing - 1.0);
                assert!(s.residual <= 1e-11);
            }
        }
    }

    #[test]
    fn curve_continuity_and_order() {
        let a_c = critical_spacing(lj()).unwrap();
        let grid = [a_c, a_c * (1.0 + 1e-12), 1.2, 1.5, 3.0];
        let pts: Vec<EnergyPoint> = energy_curve(lj(), &grid)
            .unwrap()
            .into_iter()
            .map(Result::unwrap)
            .collect();
        assert_eq!(pts[0].phase, Phase::Equidistant);
        assert!((pts[1].ground - pts[1].equidistant).abs() <= 1e-10);
        for p in &pts[2..] {
            assert_eq!(p.phase, Phase::Bipartite);
            assert!(p.ground < p.equidistant);
        }
    }

    #[test]
    fn energy_gain_is_quadratic() {
        let balance = StationarityBalance::new(lj()).unwrap();
        let spec = mie_potential(lj());
        let a_c = balance.critical_spacing();
        let hs = geometric_grid(1e-5, 1e-3, 10);
        let gains: Vec<f64> = hs
            .iter()
            .map(|&h| {
                let sol = balance.solve_offset(h).unwrap();
                equidistant_energy(&spec, a_c + h).unwrap().value
                    - bipartite_energy(&spec, &sol.chain().unwrap()).unwrap().value
            })
            .collect();
        let fit = fit_power_law(&hs, &gains).unwrap();
        assert!((fit.exponent - 2.0).abs() < 0.05, "{fit:?}");
    }

    #[test]
    fn beta_fit() {
        for (n, m) in [(12.0, 6.0), (7.0, 6.0)] {
            let b = fit_beta(MieParams::new(n, m).unwrap(), (1e-8, 1e-4), 20).unwrap();
            assert!((b.fit.exponent - 0.5).abs() < 1e-3, "{b:?}");
            assert!(((b.fit.prefactor - b.amplitude) / b.amplitude).abs() < 1e-2, "{b:?}");
        }
    }
}

//! Chains whose pair potential is infinite below a core radius `σ`.
//!
//! The core confines the gap ratio to `1 ≤ Δ ≤ 2A/σ - 1`. Since the
//! unconstrained energy is convex in `Δ` about its minimiser, the constrained
//! minimum is the unconstrained `Δ(A)` clipped to that interval. Depending on
//! `σ` this gives three regimes:
//!
//! * `σ ≤ 1`: the core never binds.
//! * `1 < σ ≤ A_c`: unconstrained up to a junction spacing `A*`, then pinned
//!   to the boundary `Δ = 2A/σ - 1`.
//! * `σ > A_c`: pinned from `A = σ` onward.

use crate::error::{Error, Result};
use crate::fit::{fit_power_law, geometric_grid, pinned_prefactor, PowerLawFit};
use crate::potential::MieParams;
use crate::roots::bisect;
use crate::specfun::riemann_zeta;
use crate::transition::{Branch, DeltaSolution, HalfPoint, StationarityBalance};

/// Relative band around `σ = 1` and `σ = A_c` resolved toward the lower regime.
const REGIME_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardCoreConfig {
    pub params: MieParams,
    pub sigma: f64,
    /// `σ - 1`, exact when built with [`HardCoreConfig::near_unit`].
    pub sigma_minus_one: f64,
}

impl HardCoreConfig {
    pub fn new(params: MieParams, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Parameter(format!("core radius must be positive, got {sigma}")));
        }
        Ok(HardCoreConfig {
            params,
            sigma,
            sigma_minus_one: sigma - 1.0,
        })
    }

    /// Core radius `1 + excess`, keeping `excess` at full precision.
    pub fn near_unit(params: MieParams, excess: f64) -> Result<Self> {
        if !(excess > -1.0) || !excess.is_finite() {
            return Err(Error::Parameter(format!("core radius must be positive, got 1 + {excess}")));
        }
        Ok(HardCoreConfig {
            params,
            sigma: 1.0 + excess,
            sigma_minus_one: excess,
        })
    }

    pub fn log_sigma(&self) -> f64 {
        self.sigma_minus_one.ln_1p()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `σ ≤ 1`.
    Unconstrained,
    /// `1 < σ ≤ A_c`: junction at `A*`.
    Junction,
    /// `σ > A_c`.
    Pinned,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionPoint {
    pub a_star: f64,
    pub ratio_star: f64,
    pub delta_star: f64,
    /// Stationarity residual at `(A*, δ*)`, in log form.
    pub residual: f64,
}

/// Constrained ground states for one core radius.
#[derive(Debug, Clone)]
pub struct HardCoreSolver {
    config: HardCoreConfig,
    balance: StationarityBalance,
    regime: Regime,
}

impl HardCoreSolver {
    pub fn new(config: HardCoreConfig) -> Result<Self> {
        let balance = StationarityBalance::new(config.params)?;
        let a_c = balance.critical_spacing();
        let regime = if config.sigma_minus_one <= REGIME_TOLERANCE {
            Regime::Unconstrained
        } else if config.sigma <= a_c * (1.0 + REGIME_TOLERANCE) {
            Regime::Junction
        } else {
            Regime::Pinned
        };
        Ok(HardCoreSolver {
            config,
            balance,
            regime,
        })
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn config(&self) -> &HardCoreConfig {
        &self.config
    }

    /// Spacing where the unconstrained `Δ(A)` meets the core boundary.
    ///
    /// With `A* = σ/(2δ*)` the stationarity condition reduces to
    /// `G(δ*) = (n - m) ln σ`, which is monotone in `δ*`.
    pub fn junction(&self) -> Result<JunctionPoint> {
        if self.regime != Regime::Junction {
            return Err(Error::NoJunction(format!(
                "σ = {} lies outside (1, A_c = {}]",
                self.config.sigma,
                self.balance.critical_spacing()
            )));
        }
        let MieParams { n, m } = self.config.params;
        let target = (n - m) * self.config.log_sigma();
        let f = |d: f64| self.balance.scaled_at(d).map(|g| g - target).unwrap_or(f64::NAN);
        let delta_star = if f(0.5) <= 0.0 {
            0.5
        } else {
            bisect(f, 1e-16, 0.5)?.x
        };
        let a_star = self.config.sigma / (2.0 * delta_star);
        let (ratio_star, _) = HalfPoint::from_delta(delta_star).ratio();
        let offset = a_star - self.balance.critical_spacing();
        let residual = self.balance.residual(offset, delta_star)?.abs();
        Ok(JunctionPoint {
            a_star,
            ratio_star,
            delta_star,
            residual,
        })
    }

    /// Energy-minimising `Δ` at spacing `A` subject to `min(a, b) ≥ σ`.
    pub fn constrained_delta(&self, spacing: f64) -> Result<DeltaSolution> {
        let sigma = self.config.sigma;
        if spacing < sigma {
            return Err(Error::Infeasible(format!(
                "mean spacing {spacing} is below the core radius {sigma}"
            )));
        }
        let free = self.balance.solve(spacing)?;
        let limit_excess = 2.0 * (spacing - sigma) / sigma;
        if self.regime == Regime::Unconstrained || free.ratio_excess <= limit_excess {
            return Ok(free);
        }
        Ok(DeltaSolution {
            spacing,
            ratio: 1.0 + limit_excess,
            ratio_excess: limit_excess,
            residual: 0.0,
            branch: Branch::Boundary,
        })
    }
}

pub fn constrained_delta(config: HardCoreConfig, spacing: f64) -> Result<DeltaSolution> {
    HardCoreSolver::new(config)?.constrained_delta(spacing)
}

pub fn junction(config: HardCoreConfig) -> Result<JunctionPoint> {
    HardCoreSolver::new(config)?.junction()
}

/// Constrained `Δ(A)` over a grid; failures stay in their slot.
pub fn hardcore_sweep(config: HardCoreConfig, grid: &[f64]) -> Result<Vec<Result<DeltaSolution>>> {
    let solver = HardCoreSolver::new(config)?;
    Ok(grid.iter().map(|&a| solver.constrained_delta(a)).collect())
}

/// Leading behaviour of the junction as `σ → 1⁺`:
/// `A* ≈ C (σ - 1)^{-1/(m+2)}` with `C = ½ [2(m+1) ζ(m+2) / (n - m)]^{1/(m+2)}`.
pub fn junction_asymptote(params: MieParams) -> Result<(f64, f64)> {
    let MieParams { n, m } = params;
    let exponent = -1.0 / (m + 2.0);
    let prefactor = 0.5 * (2.0 * (m + 1.0) * riemann_zeta(m + 2.0)? / (n - m)).powf(1.0 / (m + 2.0));
    Ok((exponent, prefactor))
}

/// Power-law fit of `A*` against `σ - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauFit {
    pub fit: PowerLawFit,
    pub theory_exponent: f64,
    pub theory_prefactor: f64,
    /// Prefactor with the exponent held at its theoretical value.
    pub pinned_prefactor: f64,
}

pub fn fit_tau(params: MieParams, window: (f64, f64), n_points: usize) -> Result<TauFit> {
    let (lo, hi) = window;
    if !(lo > 0.0) || !(hi > lo) {
        return Err(Error::Parameter(format!("need 0 < lo < hi, got ({lo}, {hi})")));
    }
    let mut xs = Vec::with_capacity(n_points);
    let mut ys = Vec::with_capacity(n_points);
    for excess in geometric_grid(lo, hi, n_points) {
        if let Ok(point) = junction(HardCoreConfig::near_unit(params, excess)?) {
            xs.push(excess);
            ys.push(point.a_star);
        }
    }
    if xs.len() < n_points {
        return Err(Error::DegenerateFit(format!(
            "only {} of {n_points} junctions solved",
            xs.len()
        )));
    }
    let mut fit = fit_power_law(&xs, &ys)?;
    fit.window = window;
    let (theory_exponent, theory_prefactor) = junction_asymptote(params)?;
    Ok(TauFit {
        fit,
        theory_exponent,
        theory_prefactor,
        pinned_prefactor: pinned_prefactor(&xs, &ys, theory_exponent),
    })
}

//! Pair potentials as finite signed mixtures of inverse powers, with an
//! optional hard core.
//!
//! Each Riesz component `c r^{-s}` has the Laplace representation
//! `r^{-s} = ∫ e^{-r² t} t^{s/2-1} / Γ(s/2) dt`; everything downstream that
//! integrates over `t` does so component by component and combines the
//! results linearly.

use std::fmt;
use std::str::FromStr;

use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

/// A single inverse-power term `coefficient · r^{-exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RieszComponent {
    pub coefficient: f64,
    pub exponent: f64,
}

impl RieszComponent {
    pub fn new(coefficient: f64, exponent: f64) -> Result<Self> {
        if !(exponent > 1.0) || !exponent.is_finite() {
            return Err(Error::Parameter(format!(
                "Riesz exponent must exceed 1 for lattice summability, got {exponent}"
            )));
        }
        if !coefficient.is_finite() {
            return Err(Error::Parameter(format!(
                "non-finite Riesz coefficient {coefficient}"
            )));
        }
        Ok(RieszComponent {
            coefficient,
            exponent,
        })
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.coefficient * r.powf(-self.exponent)
    }

    /// Density of the Laplace measure of `r^{-s}` (without the coefficient):
    /// `t^{s/2-1} / Γ(s/2)`.
    pub fn measure_density(&self, t: f64) -> f64 {
        let h = 0.5 * self.exponent;
        ((h - 1.0) * t.ln() - ln_gamma(h)).exp()
    }
}

/// Mie exponents, `n > m > 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MieParams {
    pub n: f64,
    pub m: f64,
}

impl MieParams {
    pub fn new(n: f64, m: f64) -> Result<Self> {
        if !(m > 1.0) || !(n > m) || !n.is_finite() {
            return Err(Error::Parameter(format!(
                "Mie exponents need n > m > 1, got n = {n}, m = {m}"
            )));
        }
        Ok(MieParams { n, m })
    }
}

/// Value of a potential, with the hard-core interior kept distinct from
/// any finite number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PotentialValue {
    Finite(f64),
    HardCore,
}

impl PotentialValue {
    pub fn finite(self) -> Option<f64> {
        match self {
            PotentialValue::Finite(v) => Some(v),
            PotentialValue::HardCore => None,
        }
    }

    pub fn is_hard_core(self) -> bool {
        matches!(self, PotentialValue::HardCore)
    }
}

/// A pair potential `Σ c_k r^{-s_k}`, `+∞` inside an optional hard core.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialSpec {
    components: Vec<RieszComponent>,
    hard_core_radius: Option<f64>,
    label: String,
    mie: Option<MieParams>,
}

impl PotentialSpec {
    pub fn from_components(components: Vec<RieszComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Parameter("potential needs at least one component".into()));
        }
        if components.len() == 2 && components[0].exponent == components[1].exponent {
            return Err(Error::Parameter(
                "two-component potential needs distinct exponents".into(),
            ));
        }
        let label = riesz_label(&components);
        Ok(PotentialSpec {
            components,
            hard_core_radius: None,
            label,
            mie: None,
        })
    }

    pub fn with_hard_core(mut self, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Parameter(format!(
                "hard-core radius must be positive, got {sigma}"
            )));
        }
        self.hard_core_radius = Some(sigma);
        Ok(self)
    }

    pub fn components(&self) -> &[RieszComponent] {
        &self.components
    }

    pub fn hard_core_radius(&self) -> Option<f64> {
        self.hard_core_radius
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Mie exponents when the potential was built by [`mie_potential`].
    pub fn mie_params(&self) -> Option<MieParams> {
        self.mie
    }

    pub fn evaluate(&self, r: f64) -> Result<PotentialValue> {
        evaluate(self, r)
    }
}

/// `f(r) = [m r^{-n} - n r^{-m}] / (n - m)`: minimum `-1` at `r = 1`.
pub fn mie_potential(params: MieParams) -> PotentialSpec {
    let MieParams { n, m } = params;
    let components = vec![
        RieszComponent {
            coefficient: m / (n - m),
            exponent: n,
        },
        RieszComponent {
            coefficient: -n / (n - m),
            exponent: m,
        },
    ];
    PotentialSpec {
        components,
        hard_core_radius: None,
        label: format!("mie:n={},m={}", fmt_num(n), fmt_num(m)),
        mie: Some(params),
    }
}

/// The `n → m⁺` limit of the Mie family, `r ↦ -(1 + m ln r) / r^m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MieLimitPotential {
    m: f64,
}

impl MieLimitPotential {
    pub fn eval(&self, r: f64) -> f64 {
        -(1.0 + self.m * r.ln()) * r.powf(-self.m)
    }
}

pub fn mie_limit_potential(m: f64) -> Result<MieLimitPotential> {
    if !(m > 1.0) || !m.is_finite() {
        return Err(Error::Parameter(format!("need m > 1, got {m}")));
    }
    Ok(MieLimitPotential { m })
}

/// Pointwise value; [`PotentialValue::HardCore`] for `r < σ`.
pub fn evaluate(spec: &PotentialSpec, r: f64) -> Result<PotentialValue> {
    if !(r > 0.0) {
        return Err(crate::error::domain(
            "evaluate",
            format!("distance must be positive, got {r}"),
        ));
    }
    if let Some(sigma) = spec.hard_core_radius {
        if r < sigma {
            return Ok(PotentialValue::HardCore);
        }
    }
    Ok(PotentialValue::Finite(
        spec.components.iter().map(|c| c.eval(r)).sum(),
    ))
}

fn fmt_num(x: f64) -> String {
    format!("{x}")
}

fn riesz_label(components: &[RieszComponent]) -> String {
    let parts: Vec<String> = components
        .iter()
        .map(|c| format!("c={},s={}", fmt_num(c.coefficient), fmt_num(c.exponent)))
        .collect();
    format!("riesz:{}", parts.join(";"))
}

impl fmt::Display for PotentialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)?;
        if let Some(sigma) = self.hard_core_radius {
            write!(f, ",sigma={}", fmt_num(sigma))?;
        }
        Ok(())
    }
}

fn parse_err(text: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        text: text.to_string(),
        reason: reason.into(),
    }
}

fn parse_value(text: &str, key: &str, raw: &str) -> Result<f64> {
    raw.trim()
        .parse::<f64>()
        .map_err(|_| parse_err(text, format!("bad number for `{key}`: `{raw}`")))
}

/// Parses `mie:n=12,m=6[,sigma=1.1]` or `riesz:c=1,s=6;c=-2,s=3[,sigma=..]`.
impl FromStr for PotentialSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (kind, body) = text
            .trim()
            .split_once(':')
            .ok_or_else(|| parse_err(text, "expected `mie:` or `riesz:` prefix"))?;
        let mut sigma = None;
        let spec = match kind {
            "mie" => {
                let (mut n, mut m) = (None, None);
                for pair in body.split(',') {
                    let (key, raw) = pair
                        .split_once('=')
                        .ok_or_else(|| parse_err(text, format!("expected key=value, got `{pair}`")))?;
                    let value = parse_value(text, key, raw)?;
                    let slot = match key.trim() {
                        "n" => &mut n,
                        "m" => &mut m,
                        "sigma" => &mut sigma,
                        other => return Err(parse_err(text, format!("unknown key `{other}`"))),
                    };
                    if slot.replace(value).is_some() {
                        return Err(parse_err(text, format!("duplicate key `{}`", key.trim())));
                    }
                }
                let n = n.ok_or_else(|| parse_err(text, "missing `n`"))?;
                let m = m.ok_or_else(|| parse_err(text, "missing `m`"))?;
                mie_potential(MieParams::new(n, m)?)
            }
            "riesz" => {
                let mut components = Vec::new();
                for chunk in body.split(';') {
                    let (mut c, mut s) = (None, None);
                    for pair in chunk.split(',') {
                        let (key, raw) = pair.split_once('=').ok_or_else(|| {
                            parse_err(text, format!("expected key=value, got `{pair}`"))
                        })?;
                        let value = parse_value(text, key, raw)?;
                        let slot = match key.trim() {
                            "c" => &mut c,
                            "s" => &mut s,
                            "sigma" => &mut sigma,
                            other => {
                                return Err(parse_err(text, format!("unknown key `{other}`")))
                            }
                        };
                        if slot.replace(value).is_some() {
                            return Err(parse_err(text, format!("duplicate key `{}`", key.trim())));
                        }
                    }
                    let c = c.ok_or_else(|| parse_err(text, "component missing `c`"))?;
                    let s = s.ok_or_else(|| parse_err(text, "component missing `s`"))?;
                    components.push(RieszComponent::new(c, s)?);
                }
                PotentialSpec::from_components(components)?
            }
            other => return Err(parse_err(text, format!("unknown potential kind `{other}`"))),
        };
        match sigma {
            Some(sigma) => spec.with_hard_core(sigma),
            None => Ok(spec),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{march, Direction};

    fn lj() -> PotentialSpec {
        mie_potential(MieParams::new(12.0, 6.0).unwrap())
    }

    #[test]
    fn mie_normalisation() {
        for (n, m) in [(12.0, 6.0), (7.0, 6.0), (6.0, 2.0), (30.0, 1.5)] {
            let spec = mie_potential(MieParams::new(n, m).unwrap());
            let v = spec.evaluate(1.0).unwrap().finite().unwrap();
            assert!((v + 1.0).abs() < 1e-15, "({n},{m}) f(1) = {v}");
        }
    }

    #[test]
    fn lennard_jones_two_forms_agree() {
        let r: f64 = 2.0;
        let mixture = lj().evaluate(r).unwrap().finite().unwrap();
        let direct = r.powi(-12) - 2.0 * r.powi(-6);
        assert_eq!(mixture, direct);
        assert!(mixture < 0.0);
    }

    #[test]
    fn repulsive_inside_the_well() {
        let spec = mie_potential(MieParams::new(7.0, 6.0).unwrap());
        assert!(spec.evaluate(0.85).unwrap().finite().unwrap() > 0.0);
        assert!(spec.evaluate(0.87).unwrap().finite().unwrap() < 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(MieParams::new(6.0, 6.0).is_err());
        assert!(MieParams::new(5.0, 6.0).is_err());
        assert!(MieParams::new(3.0, 1.0).is_err());
        assert!(mie_limit_potential(1.0).is_err());
        assert!(RieszComponent::new(1.0, 0.5).is_err());
        assert!(PotentialSpec::from_components(vec![]).is_err());
        let c = RieszComponent::new(1.0, 3.0).unwrap();
        assert!(PotentialSpec::from_components(vec![c, c]).is_err());
        assert!(lj().evaluate(0.0).is_err());
    }

    #[test]
    fn hard_core_sentinel() {
        let spec = lj().with_hard_core(1.1).unwrap();
        assert_eq!(spec.evaluate(1.05).unwrap(), PotentialValue::HardCore);
        assert!(spec.evaluate(1.1).unwrap().finite().is_some());
        assert!(lj().evaluate(0.3).unwrap().finite().is_some());
    }

    #[test]
    fn limit_potential() {
        let lim = mie_limit_potential(6.0).unwrap();
        assert_eq!(lim.eval(1.0), -1.0);
        let near = mie_potential(MieParams::new(6.0 + 1e-6, 6.0).unwrap());
        let r = 1.5;
        assert!((near.evaluate(r).unwrap().finite().unwrap() - lim.eval(r)).abs() < 1e-5);
        let lim2 = mie_limit_potential(2.0).unwrap();
        assert!(lim2.eval((-0.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn unique_minimum_at_one() {
        // golden-section search on [0.5, 3]
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for (n, m) in [(12.0, 6.0), (7.0, 6.0), (6.0, 2.0), (9.0, 4.5)] {
            let spec = mie_potential(MieParams::new(n, m).unwrap());
            let f = |r: f64| spec.evaluate(r).unwrap().finite().unwrap();
            let (mut a, mut b) = (0.5, 3.0);
            while b - a > 1e-10 {
                let c = b - g * (b - a);
                let d = a + g * (b - a);
                if f(c) < f(d) {
                    b = d;
                } else {
                    a = c;
                }
            }
            let r = 0.5 * (a + b);
            assert!((r - 1.0).abs() < 1e-6, "({n},{m}) minimum at {r}");
            assert!((f(r) + 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn measure_normalisation() {
        // ∫ e^{-r² t} t^{s/2-1}/Γ(s/2) dt = r^{-s}, integrated in u = ln t
        for s in [1.5, 2.0, 6.0, 12.0] {
            for r in [0.7, 1.0, 2.3] {
                let c = RieszComponent::new(1.0, s).unwrap();
                let g = |u: f64| {
                    let t = u.exp();
                    (-r * r * t).exp() * c.measure_density(t) * t
                };
                let peak = (0.5 * s / (r * r)).ln();
                let up = march(g, peak, Direction::Up, 1.0, 1e-17, 0.0, |_| true).unwrap();
                let down =
                    march(g, peak, Direction::Down, 1.0, 1e-17, up.value, |_| true).unwrap();
                let total = up.value + down.value;
                let exact = r.powf(-s);
                assert!(((total - exact) / exact).abs() < 1e-9, "s={s} r={r}");
            }
        }
    }

    #[test]
    fn text_form() {
        let spec: PotentialSpec = "mie:n=12,m=6".parse().unwrap();
        assert_eq!(spec.mie_params(), Some(MieParams { n: 12.0, m: 6.0 }));
        assert_eq!(spec.to_string(), "mie:n=12,m=6");

        let spec: PotentialSpec = "mie:n=12,m=6,sigma=1.1".parse().unwrap();
        assert_eq!(spec.hard_core_radius(), Some(1.1));
        assert_eq!(spec.to_string(), "mie:n=12,m=6,sigma=1.1");

        let spec: PotentialSpec = "riesz:c=1,s=6;c=-2,s=3,sigma=0.9".parse().unwrap();
        assert_eq!(spec.components().len(), 2);
        assert_eq!(spec.components()[1].coefficient, -2.0);
        assert_eq!(spec.hard_core_radius(), Some(0.9));
        assert!(spec.mie_params().is_none());
        let back: PotentialSpec = spec.to_string().parse().unwrap();
        assert_eq!(back, spec);

        for bad in ["mie:n=6,m=12", "lj:n=12", "mie:n=12", "riesz:c=1", "mie:n=x,m=6", "mie:n=12,m=6,n=13"] {
            assert!(bad.parse::<PotentialSpec>().is_err(), "{bad}");
        }
    }
}

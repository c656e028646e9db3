//! Adaptive Gauss-Kronrod quadrature and a panel-marching driver for
//! integrands that decay on one side of a logarithmic axis.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae and weights, embedded 7-point Gauss weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_DEPTH: u32 = 40;

/// Integral estimate with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

fn gauss_kronrod_15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<Estimate> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let sum = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * sum;
        if j % 2 == 1 {
            gauss += WG[j / 2] * sum;
        }
    }
    let value = kronrod * half;
    if !value.is_finite() {
        return Err(Error::Quadrature(format!(
            "non-finite integrand on [{a}, {b}]"
        )));
    }
    Ok(Estimate {
        value,
        error: ((kronrod - gauss) * half).abs(),
    })
}

fn adapt<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    whole: Estimate,
    abs_tol: f64,
    depth: u32,
) -> Result<Estimate> {
    if whole.error <= abs_tol || whole.error <= 50.0 * f64::EPSILON * whole.value.abs() {
        return Ok(whole);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "subdivision limit reached on [{a}, {b}] (error {:.3e} > {abs_tol:.3e})",
            whole.error
        )));
    }
    let mid = 0.5 * (a + b);
    let left = gauss_kronrod_15(f, a, mid)?;
    let right = gauss_kronrod_15(f, mid, b)?;
    let left = adapt(f, a, mid, left, 0.5 * abs_tol, depth + 1)?;
    let right = adapt(f, mid, b, right, 0.5 * abs_tol, depth + 1)?;
    Ok(Estimate {
        value: left.value + right.value,
        error: left.error + right.error,
    })
}

/// Adaptive Gauss-Kronrod (7/15) integration of `f` over `[a, b]` to
/// absolute tolerance `abs_tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<Estimate> {
    let whole = gauss_kronrod_15(&f, a, b)?;
    adapt(&f, a, b, whole, abs_tol, 0)
}

/// Direction in which [`march`] advances from its starting point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// Integrates `f` from `start` towards `±∞` in panels of width `step`.
///
/// Marching stops once a panel contributes less than `rel_tol` of
/// `scale + |accumulated|` and `settled(u)` reports that the integrand is
/// past its maximum at the panel's far edge.
pub fn march<F, S>(
    f: F,
    start: f64,
    direction: Direction,
    step: f64,
    rel_tol: f64,
    scale: f64,
    settled: S,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
    S: Fn(f64) -> bool,
{
    let sign = match direction {
        Direction::Up => 1.0,
        Direction::Down => -1.0,
    };
    let mut total = Estimate {
        value: 0.0,
        error: 0.0,
    };
    let mut u = start;
    for _ in 0..10_000 {
        let next = u + sign * step;
        let (a, b) = if sign > 0.0 { (u, next) } else { (next, u) };
        let reference = scale + total.value.abs();
        let panel = integrate(&f, a, b, 0.1 * rel_tol * reference.max(f64::MIN_POSITIVE))?;
        total.value += panel.value;
        total.error += panel.error;
        u = next;
        let reference = scale + total.value.abs();
        if settled(u) && panel.value.abs() <= rel_tol * reference {
            return Ok(total);
        }
    }
    Err(Error::Quadrature(format!(
        "panel marching from {start} did not terminate"
    )))
}

//! Riemann and Hurwitz zeta functions and the Jacobi theta functions
//! `θ2`, `θ3` at zero argument, restricted to the real domain this crate
//! needs (`s > 1`, positive nome exponent).

mod theta;
mod zeta;

pub use theta::{theta2, theta3, theta_derivative, ThetaKind};
pub use zeta::{hurwitz_zeta, hurwitz_zeta_ds, riemann_zeta, zeta_log_derivative};

pub(crate) use theta::{direct_sum as theta_direct, poisson_mode_derivative, POISSON_SWITCH};

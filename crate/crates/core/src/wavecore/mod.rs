//! Background-medium physics and the special functions shared by the rest
//! of the crate.
//!
//! Everything in here is a pure function of its arguments.

mod bessel;
mod hankel;
mod medium;

pub use bessel::{bessel_j, bessel_j_orders, jacobi_anger_order, MAX_BESSEL_ARGUMENT};
pub use hankel::{hankel1_0, hankel_farfield, HANKEL_ASYMPTOTIC_RADIUS};
pub use medium::{complex_wavenumber, BackgroundMedium, Wavenumber, LOW_LOSS_RATIO};

/// Vacuum permittivity, F/m (four significant digits, as used for the
/// reference tank configuration).
pub const EPS0: f64 = 8.854e-12;

/// Vacuum permeability, H/m.
pub const MU0: f64 = 4.0e-7 * std::f64::consts::PI;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

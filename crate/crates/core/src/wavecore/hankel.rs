use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64;

use super::bessel::{orders_unchecked, power_series, SERIES_RADIUS};
use super::{Wavenumber, EULER_GAMMA};
use crate::error::{Error, Result};
use crate::point::Point2;

/// At and above this modulus `H₀⁽¹⁾` is evaluated from its asymptotic
/// expansion; the smallest term there is below `e^{-40}`.
pub const HANKEL_ASYMPTOTIC_RADIUS: f64 = 20.0;

/// `H₀⁽¹⁾(z) = J₀(z) + iY₀(z)`.
pub fn hankel1_0(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("Hankel argument {z} is not finite")));
    }
    let r = z.norm();
    if r == 0.0 {
        return Err(Error::Singularity("H0(1) diverges at z = 0".into()));
    }
    Ok(if r >= HANKEL_ASYMPTOTIC_RADIUS {
        asymptotic(z)
    } else if r <= SERIES_RADIUS {
        let (j0, y0) = series_j0_y0(z);
        j0 + Complex64::i() * y0
    } else {
        let (j0, y0) = neumann_j0_y0(z);
        j0 + Complex64::i() * y0
    })
}

/// `Y₀ = (2/π)[(ln(z/2)+γ)J₀ + Σ_{k≥1} (−1)^{k+1} H_k (z²/4)ᵏ/(k!)²]`.
fn series_j0_y0(z: Complex64) -> (Complex64, Complex64) {
    let j0 = power_series(0, z);
    let q = z * z * 0.25;
    let mut term = Complex64::new(1.0, 0.0);
    let mut harmonic = 0.0;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 1..120 {
        let kf = k as f64;
        term *= -q / (kf * kf);
        harmonic += 1.0 / kf;
        let contrib = -term * harmonic;
        sum += contrib;
        if contrib.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    let log = (z * 0.5).ln() + EULER_GAMMA;
    (j0, (log * j0 + sum) * (2.0 / PI))
}

/// `Y₀ = (2/π)(ln(z/2)+γ)J₀ − (4/π) Σ_{k≥1} (−1)ᵏ J_{2k}/k`, with the
/// `J_{2k}` from one backward-recurrence sweep.
fn neumann_j0_y0(z: Complex64) -> (Complex64, Complex64) {
    let top = z.norm().ceil() as usize + 40;
    let j = orders_unchecked(z, top);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut k = 1;
    while 2 * k <= top {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += j[2 * k] * (sign / k as f64);
        k += 1;
    }
    let log = (z * 0.5).ln() + EULER_GAMMA;
    let y0 = log * j[0] * (2.0 / PI) - sum * (4.0 / PI);
    (j[0], y0)
}

/// `√(2/πz) e^{i(z−π/4)} Σ iᵏ aₖ(0) / zᵏ`, optimally truncated.
fn asymptotic(z: Complex64) -> Complex64 {
    let inv_z = z.inv();
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = f64::INFINITY;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        term *= Complex64::i() * inv_z * (-odd * odd / (8.0 * k as f64));
        let size = term.norm();
        if size >= last {
            break;
        }
        sum += term;
        last = size;
        if size <= 1e-17 * sum.norm() {
            break;
        }
    }
    let prefactor = (Complex64::new(2.0 / PI, 0.0) * inv_z).sqrt();
    prefactor * (Complex64::i() * (z - FRAC_PI_4)).exp() * sum
}

/// Far-field form of `H₀⁽¹⁾(k|a − r'|)` for an antenna at `a = R·θ`:
/// `(1−i) e^{ikR} / √(kπR) · e^{−ik θ·r'}`.
pub fn hankel_farfield(
    k: Wavenumber,
    radius_m: f64,
    direction: Point2,
    r_prime: Point2,
) -> Result<Complex64> {
    if !(radius_m > 0.0) || !radius_m.is_finite() {
        return Err(Error::Geometry(format!(
            "array radius {radius_m} must be positive"
        )));
    }
    let k = k.value();
    let i = Complex64::i();
    let amplitude =
        Complex64::new(1.0, -1.0) * (i * k * radius_m).exp() / (k * PI * radius_m).sqrt();
    Ok(amplitude * (-i * k * direction.dot(r_prime)).exp())
}

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::Result;
use crate::wavecore::bessel_j_orders;

/// `i^s` for any integer `s`.
pub(crate) fn i_pow(s: i64) -> Complex64 {
    match s.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Two-sided sum `Σ_{0<|s|≤S} i^s J_s(x) e^{is·angle}` given `J_0..J_S` of `x`.
pub(crate) fn e_factor_from_orders(j: &[Complex64], angle: f64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for (s, &js) in j.iter().enumerate().skip(1) {
        let si = s as i64;
        let j_neg = if s % 2 == 0 { js } else { -js };
        total += i_pow(si) * js * Complex64::from_polar(1.0, s as f64 * angle);
        total += i_pow(-si) * j_neg * Complex64::from_polar(1.0, -(s as f64) * angle);
    }
    total
}

/// Truncated factor `Σ_{0<|s|≤s_max} i^s J_s(x) e^{is(θ_n−φ)}`.
pub fn e_factor(x: Complex64, theta_minus_phi: f64, s_max: usize) -> Result<Complex64> {
    let j = bessel_j_orders(x, s_max.max(1))?;
    Ok(e_factor_from_orders(&j, theta_minus_phi))
}

/// `θ_n = offset + 2π(n−1)/N`.
pub fn uniform_angles(n_antennas: usize, offset: f64) -> Vec<f64> {
    (0..n_antennas)
        .map(|n| offset + TAU * n as f64 / n_antennas as f64)
        .collect()
}

/// `Σ_n e^{is(θ_n−φ)}` over a uniform array.
pub fn array_phase_sum(n_antennas: usize, s: i64, phi: f64) -> Complex64 {
    uniform_angles(n_antennas, 0.0)
        .into_iter()
        .map(|theta| Complex64::from_polar(1.0, s as f64 * (theta - phi)))
        .sum()
}

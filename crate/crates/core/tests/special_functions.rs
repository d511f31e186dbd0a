//! Special functions against independent oracles: a plain power series, the
//! Bessel integral `Jₙ(z) = (1/2π)∫₀^{2π} e^{i(z sin τ − nτ)} dτ` evaluated by
//! the (spectrally accurate) periodic trapezoid rule, and direct exponentials.

use std::f64::consts::{PI, TAU};

use kirmig::wavecore::{
    bessel_j, bessel_j_orders, hankel1_0, hankel_farfield, jacobi_anger_order, Wavenumber,
    EULER_GAMMA,
};
use kirmig::{Complex64, Point2};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// 80-term ascending series with explicit factorials.
fn series_oracle_j0(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut fact = 1.0;
    for k in 0..80 {
        if k > 0 {
            fact *= k as f64;
        }
        sum += (-1f64).powi(k) * (x / 2.0).powi(2 * k) / (fact * fact);
    }
    sum
}

fn integral_oracle(n: i32, z: Complex64) -> Complex64 {
    let m = 1024;
    let mut acc = c(0.0, 0.0);
    for j in 0..m {
        let tau = TAU * j as f64 / m as f64;
        acc += (Complex64::i() * (z * tau.sin() - n as f64 * tau)).exp();
    }
    acc / m as f64
}

#[test]
fn first_zero_of_j0() {
    let x0 = 2.404_825_557_695_773;
    assert!(series_oracle_j0(x0).abs() < 1e-13);
    let v = bessel_j(0, c(x0, 0.0)).unwrap();
    assert!(v.norm() <= 1e-10, "J0(x0) = {v}");
}

#[test]
fn power_series_oracle_on_small_real_arguments() {
    for i in 0..=40 {
        let x = 0.2 * i as f64;
        let v = bessel_j(0, c(x, 0.0)).unwrap();
        assert!((v.re - series_oracle_j0(x)).abs() < 1e-13, "x = {x}");
    }
}

#[test]
fn integral_oracle_over_supported_range() {
    // the arguments seen in practice: |z| up to 60, small imaginary part
    let args = [
        c(0.3, 0.0),
        c(3.7, -0.2),
        c(8.0, 0.4),
        c(14.6, -0.36),
        c(29.1, 0.72),
        c(42.0, -1.0),
        c(58.3, 1.45),
        c(59.9, 0.0),
        c(10.0, 10.0),
        c(0.0, 30.0),
    ];
    for z in args {
        let scale = z.im.abs().exp().max(1.0);
        for n in [-7, 0, 1, 2, 5, 13, 30, 59, 74, 90] {
            let got = bessel_j(n, z).unwrap();
            let want = integral_oracle(n, z);
            let err = (got - want).norm();
            assert!(
                err <= 1e-12 * scale.max(want.norm()),
                "J_{n}({z}): got {got}, oracle {want}, err {err:e}"
            );
        }
    }
}

/// Largest residual of the truncated Jacobi–Anger series over 64 angles.
fn jacobi_anger_residual(x: f64, s_max: usize) -> f64 {
    let j = bessel_j_orders(c(x, 0.0), s_max).unwrap();
    let mut worst = 0.0f64;
    for a in 0..64 {
        let theta = TAU * a as f64 / 64.0;
        let mut series = j[0];
        for (s, &js) in j.iter().enumerate().skip(1) {
            let is = Complex64::i().powu(s as u32);
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            // i^s J_s e^{isθ} + i^{-s} J_{-s} e^{-isθ}
            series += is * js * Complex64::from_polar(1.0, s as f64 * theta);
            series += is.inv() * (js * sign) * Complex64::from_polar(1.0, -(s as f64) * theta);
        }
        let direct = Complex64::from_polar(1.0, x * theta.cos());
        worst = worst.max((series - direct).norm());
    }
    worst
}

#[test]
fn jacobi_anger_with_fixed_margin_on_moderate_arguments() {
    // S = ceil(x) + 20 keeps the tail below 1e-10 only up to x ≈ 16
    for i in 0..=32 {
        let x = 0.5 * i as f64;
        let r = jacobi_anger_residual(x, x.ceil() as usize + 20);
        assert!(r <= 1e-10, "x = {x}: {r:e}");
    }
}

#[test]
fn jacobi_anger_with_scaled_margin_over_full_range() {
    for i in 0..=120 {
        let x = 0.5 * i as f64;
        let r = jacobi_anger_residual(x, jacobi_anger_order(x));
        assert!(r <= 1e-10, "x = {x}: {r:e}");
    }
}

#[test]
fn fixed_margin_residual_is_the_series_tail() {
    // at x = 40 the residual with S = 60 is the true tail 2·Σ_{s>60}|J_s(40)|
    // (≈1.5e-7), not an evaluation error
    let r = jacobi_anger_residual(40.0, 60);
    let tail: f64 = (61..140)
        .map(|s| 2.0 * integral_oracle(s, c(40.0, 0.0)).norm())
        .sum();
    assert!(
        r > 1e-8 && r <= tail * (1.0 + 1e-6),
        "residual {r:e}, tail {tail:e}"
    );
}

proptest! {
    #[test]
    fn negative_orders_reflect(s in 0i32..80, re in 0.0f64..55.0, im in -2.0f64..2.0) {
        let z = c(re, im);
        let pos = bessel_j(s, z).unwrap();
        let neg = bessel_j(-s, z).unwrap();
        let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert_eq!(neg, pos * sign);
    }

    #[test]
    fn hankel_real_part_is_j0(x in 1e-6f64..59.0) {
        let h = hankel1_0(c(x, 0.0)).unwrap();
        let j0 = bessel_j(0, c(x, 0.0)).unwrap();
        prop_assert!((h.re - j0.re).abs() <= 1e-12 * (1.0 + j0.re.abs()), "{} vs {}", h.re, j0.re);
    }
}

#[test]
fn hankel_large_argument_matches_leading_term() {
    for phase in [0.0, 0.02, -0.025, 0.1] {
        let z = Complex64::from_polar(20.0, phase);
        let h = hankel1_0(z).unwrap();
        let lead = (c(2.0 / PI, 0.0) / z).sqrt() * (Complex64::i() * (z - PI / 4.0)).exp();
        let rel = (h - lead).norm() / h.norm();
        assert!(rel <= 0.01, "phase {phase}: rel {rel}");
    }
}

#[test]
fn hankel_small_argument_matches_log_form() {
    for phase in [0.0, 0.025, -0.025] {
        let z = Complex64::from_polar(1e-3, phase);
        let h = hankel1_0(z).unwrap();
        let approx = c(1.0, 0.0) + Complex64::i() * (2.0 / PI) * ((z / 2.0).ln() + EULER_GAMMA);
        let rel = (h - approx).norm() / h.norm();
        assert!(rel <= 1e-4, "rel {rel}");
    }
}

#[test]
fn farfield_at_origin_is_the_bare_amplitude() {
    let k = Wavenumber::new(c(171.27, 4.26)).unwrap();
    let r = 0.09;
    let v = hankel_farfield(k, r, Point2::new(0.0, 1.0), Point2::ORIGIN).unwrap();
    let kv = k.value();
    let want = c(1.0, -1.0) * (Complex64::i() * kv * r).exp() / (kv * PI * r).sqrt();
    assert!((v - want).norm() <= 1e-15 * want.norm());
}

#[test]
fn farfield_depends_only_on_projection() {
    let k = Wavenumber::new(c(171.27, 4.26)).unwrap();
    let dir = Point2::from_polar(1.0, 0.7);
    let perp = Point2::from_polar(1.0, 0.7 + PI / 2.0);
    let base = dir * 0.013;
    let a = hankel_farfield(k, 0.09, dir, base).unwrap();
    let b = hankel_farfield(k, 0.09, dir, base + perp * 0.04).unwrap();
    assert!((a - b).norm() <= 1e-14 * a.norm());
}

#[test]
fn farfield_error_sweep_against_exact_hankel() {
    // along the antenna direction the far-field phase is exact up to the
    // asymptotic correction; amplitude uses R instead of |a - r'|
    let k = Wavenumber::new(c(171.27, 4.26)).unwrap();
    let dir = Point2::from_polar(1.0, 1.1);
    let mut checked = 0;
    for i in 0..=40 {
        let radius = 0.08 + 0.01 * i as f64;
        for f in [0.0, 0.005, -0.005, 0.01] {
            let r_prime = dir * (f * radius);
            let dist = (dir * radius).distance(r_prime);
            if k.norm() * dist < 15.0 {
                continue;
            }
            let exact = hankel1_0(k.value() * dist).unwrap();
            let ff = hankel_farfield(k, radius, dir, r_prime).unwrap();
            let rel = (ff - exact).norm() / exact.norm();
            assert!(rel <= 0.02, "R={radius} f={f}: rel {rel}");
            checked += 1;
        }
    }
    assert!(checked > 100);
}

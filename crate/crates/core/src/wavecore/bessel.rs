//! Integer-order Bessel functions of the first kind for complex argument.
//!
//! Small arguments use the ascending power series directly. Larger ones use
//! Miller's backward recurrence, normalised with the generating-function
//! identity `e^{∓iz} = J₀(z) + 2 Σ_{n≥1} (∓i)ⁿ Jₙ(z)`; the sign is picked so
//! that the normalisation sum has modulus `e^{|Im z|} ≥ 1`, which keeps it
//! free of cancellation off the real axis.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest `|z|` accepted by [`bessel_j`] and [`bessel_j_orders`].
pub const MAX_BESSEL_ARGUMENT: f64 = 60.0;

/// Below this modulus the power series loses less than two digits.
pub(crate) const SERIES_RADIUS: f64 = 5.0;

/// Extra orders above `max(n, |z|)` where the backward recurrence starts.
const MILLER_HEADROOM: usize = 60;

const RESCALE_ABOVE: f64 = 1e250;

/// Smallest two-sided truncation order `S` for which the Jacobi–Anger tail
/// `2 Σ_{s>S} |J_s(x)|` stays below `1e-12` for every `|x| ≤ x_max ≤ 60`.
///
/// The margin grows like `x^{1/3}` (the width of the Bessel transition
/// region); a fixed additive margin is not enough for large arguments.
pub fn jacobi_anger_order(x_max: f64) -> usize {
    let x = x_max.abs();
    x.ceil() as usize + (10.0 * x.cbrt()).ceil() as usize + 5
}

pub(crate) fn check_argument(z: Complex64) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain(format!("Bessel argument {z} is not finite")));
    }
    if z.norm() > MAX_BESSEL_ARGUMENT {
        return Err(Error::Domain(format!(
            "|z| = {} exceeds the supported Bessel range {MAX_BESSEL_ARGUMENT}",
            z.norm()
        )));
    }
    Ok(())
}

/// `J_order(z)`; negative orders via `J₋ₛ = (−1)ˢ Jₛ`.
pub fn bessel_j(order: i32, z: Complex64) -> Result<Complex64> {
    check_argument(z)?;
    let n = order.unsigned_abs() as usize;
    let value = if z.norm() <= SERIES_RADIUS {
        power_series(n, z)
    } else {
        miller(z, n)[n]
    };
    Ok(if order < 0 && n % 2 == 1 {
        -value
    } else {
        value
    })
}

/// `[J₀(z), J₁(z), …, J_max_order(z)]` in one pass.
pub fn bessel_j_orders(z: Complex64, max_order: usize) -> Result<Vec<Complex64>> {
    check_argument(z)?;
    Ok(orders_unchecked(z, max_order))
}

pub(crate) fn orders_unchecked(z: Complex64, max_order: usize) -> Vec<Complex64> {
    if z.norm() <= SERIES_RADIUS {
        (0..=max_order).map(|n| power_series(n, z)).collect()
    } else {
        let mut all = miller(z, max_order);
        all.truncate(max_order + 1);
        all
    }
}

/// `Jₙ(z) = (z/2)ⁿ Σ_k (−z²/4)ᵏ / (k! (n+k)!)`.
pub(crate) fn power_series(n: usize, z: Complex64) -> Complex64 {
    let half = z * 0.5;
    let mut term = Complex64::new(1.0, 0.0);
    for j in 1..=n {
        term *= half / j as f64;
    }
    if term == Complex64::new(0.0, 0.0) {
        return term;
    }
    let q = -half * half;
    let mut sum = term;
    for k in 1..200 {
        term *= q / ((k * (n + k)) as f64);
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
    }
    sum
}

/// Backward recurrence returning `J₀ … J_M` for some `M ≥ max_order`.
fn miller(z: Complex64, max_order: usize) -> Vec<Complex64> {
    let start = max_order.max(z.norm().ceil() as usize) + MILLER_HEADROOM;
    let zero = Complex64::new(0.0, 0.0);
    let mut f = vec![zero; start + 2];
    f[start] = Complex64::new(1e-30, 0.0);
    let inv_z = z.inv();
    for n in (1..=start).rev() {
        let next = f[n] * (2.0 * n as f64) * inv_z - f[n + 1];
        f[n - 1] = next;
        if next.norm() > RESCALE_ABOVE {
            for v in &mut f[n - 1..=start] {
                *v /= RESCALE_ABOVE;
            }
        }
    }

    // e^{-iz} = J0 + 2 Σ (-i)^n Jn  (Im z >= 0), e^{iz} = J0 + 2 Σ i^n Jn otherwise
    let (rot, target) = if z.im >= 0.0 {
        (Complex64::new(0.0, -1.0), (-Complex64::i() * z).exp())
    } else {
        (Complex64::new(0.0, 1.0), (Complex64::i() * z).exp())
    };
    let mut phase = Complex64::new(1.0, 0.0);
    let mut tail = zero;
    for v in &f[1..=start] {
        phase *= rot;
        tail += phase * v;
    }
    let scale = target / (f[0] + tail * 2.0);
    f.truncate(start + 1);
    for v in &mut f {
        *v *= scale;
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        for s in [-5, -1, 1, 2, 7] {
            assert_eq!(bessel_j(s, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        }
    }

    #[test]
    fn tabulated_real_values() {
        // reference values to 16 digits
        let cases = [
            (0, 1.0, 0.765_197_686_557_966_6),
            (1, 1.0, 0.440_050_585_744_933_5),
            (0, 10.0, -0.245_935_764_451_348_3),
            (1, 10.0, 0.043_472_746_168_861_6),
            (5, 10.0, -0.234_061_528_186_793_7),
        ];
        for (n, x, want) in cases {
            let got = bessel_j(n, c(x, 0.0)).unwrap();
            assert!((got.re - want).abs() < 1e-14, "J{n}({x}) = {got}");
            assert!(got.im.abs() < 1e-14);
        }
    }

    #[test]
    fn series_and_recurrence_agree_at_switchover() {
        for &arg in &[4.9, 5.1] {
            for phase in [0.0, 0.3, -0.2, 2.0] {
                let z = Complex64::from_polar(arg, phase);
                for n in 0..12 {
                    let a = power_series(n, z);
                    let b = miller(z, n)[n];
                    assert!((a - b).norm() < 1e-13, "n={n} z={z} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn out_of_range_is_a_domain_error() {
        assert!(matches!(bessel_j(0, c(60.5, 0.0)), Err(Error::Domain(_))));
        assert!(matches!(
            bessel_j(0, c(f64::NAN, 0.0)),
            Err(Error::Domain(_))
        ));
        assert!(bessel_j(3, c(0.0, 59.9)).is_ok());
    }

    #[test]
    fn orders_vector_matches_single_calls() {
        let z = c(37.0, 1.2);
        let all = bessel_j_orders(z, 80).unwrap();
        assert_eq!(all.len(), 81);
        for n in [0usize, 1, 17, 36, 37, 60, 80] {
            assert!((all[n] - bessel_j(n as i32, z).unwrap()).norm() < 1e-15);
        }
    }
}

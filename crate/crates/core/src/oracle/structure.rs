use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::series::{e_factor_from_orders, uniform_angles};
use crate::array::ImagingGrid;
use crate::error::{Error, Result};
use crate::forward::{contrast_with, Quadrature, Scatterer, Scene};
use crate::point::Point2;
use crate::wavecore::{bessel_j_orders, complex_wavenumber, BackgroundMedium, Wavenumber};

/// Truncation `⌈|k|·4·roi⌉ + 15`; the series is also evaluated at twice the
/// separation, which reaches `2·(2·roi)`.
pub fn certified_truncation(k: Wavenumber, roi_radius_m: f64) -> usize {
    (k.norm() * 4.0 * roi_radius_m).ceil() as usize + 15
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StructureParams {
    pub truncation_order: usize,
    pub n_antennas: usize,
    pub radius_m: f64,
    pub angle_offset_rad: f64,
    pub wavenumber: Wavenumber,
    pub quadrature: Quadrature,
    /// Multiply by [`path_loss_factor`]; only differs from 1 in a lossy
    /// background.
    pub path_loss: bool,
}

impl StructureParams {
    pub fn new(
        n_antennas: usize,
        radius_m: f64,
        wavenumber: Wavenumber,
        roi_radius_m: f64,
    ) -> Self {
        Self {
            truncation_order: certified_truncation(wavenumber, roi_radius_m),
            n_antennas,
            radius_m,
            angle_offset_rad: 0.0,
            wavenumber,
            quadrature: Quadrature::Point,
            path_loss: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.truncation_order < 1 {
            return Err(Error::Config("truncation order must be at least 1".into()));
        }
        if self.n_antennas < 2 {
            return Err(Error::Config("need at least two antennas".into()));
        }
        if !(self.radius_m > 0.0) {
            return Err(Error::Config(format!(
                "array radius must be positive, got {}",
                self.radius_m
            )));
        }
        self.quadrature.validate()
    }

    fn angles(&self) -> Vec<f64> {
        uniform_angles(self.n_antennas, self.angle_offset_rad)
    }

    /// `N ωε_b / (32 k_b R π)` with the complex wavenumber.
    fn prefactor(&self, medium: &BackgroundMedium) -> Complex64 {
        let n = self.n_antennas as f64;
        n * medium.omega() * medium.permittivity()
            / (32.0 * self.wavenumber.value() * self.radius_m * PI)
    }
}

/// `|e^{2ikR}| · N / Σ_n e^{−2 Im(k) θ_n·r}`: the modulus lost through the
/// antenna-to-origin path and the steering normalisation when `k` is complex.
pub fn path_loss_factor(params: &StructureParams, r: Point2) -> f64 {
    let k = params.wavenumber.value();
    let norm_sq: f64 = params
        .angles()
        .iter()
        .map(|&th| (-2.0 * k.im * Point2::from_polar(1.0, th).dot(r)).exp())
        .sum();
    (-2.0 * k.im * params.radius_m).exp() * params.n_antennas as f64 / norm_sq
}

/// Sum over antennas of the truncated `𝓔` for the separation `d`.
fn bracket(params: &StructureParams, angles: &[f64], d: Point2, scale: f64) -> Result<Complex64> {
    let rho = d.norm();
    let s_max = params.truncation_order;
    let x = params.wavenumber.value() * (scale * rho);
    let j = bessel_j_orders(x, s_max)?;
    let phi = if rho > 0.0 { d.angle() } else { 0.0 };
    let n = angles.len() as f64;
    let e_sum: Complex64 = angles
        .iter()
        .map(|&th| e_factor_from_orders(&j, th - phi))
        .sum();
    Ok(j[0] + e_sum / n)
}

fn integrand(params: &StructureParams, angles: &[f64], d: Point2) -> Result<Complex64> {
    let n = params.n_antennas as f64;
    let first = bracket(params, angles, d, 1.0)?;
    let second = bracket(params, angles, d, 2.0)?;
    Ok(first * first - second / n)
}

fn integrate<F>(scene: &Scene, params: &StructureParams, t: f64, mut f: F) -> Result<Complex64>
where
    F: FnMut(Point2) -> Result<Complex64>,
{
    let pre = params.prefactor(&scene.medium);
    let mut total = Complex64::new(0.0, 0.0);
    for s in &scene.scatterers {
        let c = pre * scene.contrast_of(s)?;
        for (node, w) in params.quadrature.nodes(s.center_at(t), s.radius_m) {
            total += c * w * f(node)?;
        }
    }
    Ok(total)
}

/// Bessel-series value of the imaging function at `r`.
pub fn structure_value(r: Point2, scene: &Scene, params: &StructureParams, t: f64) -> Result<f64> {
    params.validate()?;
    let angles = params.angles();
    let v = integrate(scene, params, t, |node| {
        integrand(params, &angles, r - node)
    })?
    .norm();
    Ok(if params.path_loss {
        v * path_loss_factor(params, r)
    } else {
        v
    })
}

/// The `N → ∞` limit keeping only the `J₀²` term, with the same prefactor.
pub fn structure_limit_value(
    r: Point2,
    scene: &Scene,
    params: &StructureParams,
    t: f64,
) -> Result<f64> {
    params.validate()?;
    let v = integrate(scene, params, t, |node| {
        let x = params.wavenumber.value() * (r - node).norm();
        let j0 = bessel_j_orders(x, 0)?[0];
        Ok(j0 * j0)
    })?
    .norm();
    Ok(if params.path_loss {
        v * path_loss_factor(params, r)
    } else {
        v
    })
}

/// [`structure_value`] over a grid, parallel per point.
pub fn structure_map(
    grid: &ImagingGrid,
    scene: &Scene,
    params: &StructureParams,
    t: f64,
) -> Result<Vec<f64>> {
    grid.points()
        .par_iter()
        .map(|&r| structure_value(r, scene, params, t))
        .collect()
}

/// Closed form `(N−1)ωε_b/(32|k_b|Rπ) · |contrast| · area` at an object's
/// centre.
pub fn on_target_magnitude(
    s: &Scatterer,
    medium: &BackgroundMedium,
    n_antennas: usize,
    radius_m: f64,
    pec_sigma_eff: f64,
) -> Result<f64> {
    let k = complex_wavenumber(medium)?;
    let contrast = contrast_with(s, medium, pec_sigma_eff)?;
    let n = n_antennas as f64;
    Ok(
        (n - 1.0) * medium.omega() * medium.permittivity() / (32.0 * k.norm() * radius_m * PI)
            * contrast.norm()
            * s.area(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forward::{Trajectory, DEFAULT_PEC_SIGMA_EFF};

    fn setup(at: Point2) -> (Scene, StructureParams) {
        let medium = BackgroundMedium::reference_water();
        let k = complex_wavenumber(&medium).unwrap();
        let s = Scatterer::dielectric(Trajectory::stationary(at), 0.0032, 3.0, 0.0);
        (
            Scene::new(medium, vec![s]),
            StructureParams::new(16, 0.09, k, 0.085),
        )
    }

    #[test]
    fn certified_truncation_for_reference_setup() {
        let (_, p) = setup(Point2::ORIGIN);
        assert_eq!(p.truncation_order, 74);
    }

    #[test]
    fn center_value_matches_closed_form_up_to_the_wavenumber_modulus() {
        let at = Point2::new(0.01, -0.02);
        let (scene, p) = setup(at);
        let v = structure_value(at, &scene, &p, 0.0).unwrap();
        let closed =
            on_target_magnitude(&scene.scatterers[0], &scene.medium, 16, 0.09, 10.0).unwrap();
        assert!((v - closed).abs() <= 1e-12 * closed);
    }

    #[test]
    fn non_negative_and_zero_without_contrast() {
        let (mut scene, p) = setup(Point2::new(0.02, 0.01));
        for r in [Point2::ORIGIN, Point2::new(-0.05, 0.03)] {
            assert!(structure_value(r, &scene, &p, 0.0).unwrap() >= 0.0);
        }
        scene.scatterers[0] =
            Scatterer::with_contrast(Trajectory::stationary(Point2::ORIGIN), 0.003, 0.0.into());
        assert_eq!(
            structure_value(Point2::new(0.01, 0.0), &scene, &p, 0.0).unwrap(),
            0.0
        );
    }

    #[test]
    fn path_loss_is_unity_in_a_lossless_background() {
        let k = Wavenumber::real(171.0).unwrap();
        let p = StructureParams::new(16, 0.09, k, 0.085);
        assert!((path_loss_factor(&p, Point2::new(0.03, 0.04)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn on_target_scales_with_area() {
        let medium = BackgroundMedium::reference_water();
        let small = Scatterer::dielectric(Trajectory::stationary(Point2::ORIGIN), 0.003, 3.0, 0.0);
        let big = Scatterer::dielectric(Trajectory::stationary(Point2::ORIGIN), 0.006, 3.0, 0.0);
        let a = on_target_magnitude(&small, &medium, 16, 0.09, DEFAULT_PEC_SIGMA_EFF).unwrap();
        let b = on_target_magnitude(&big, &medium, 16, 0.09, DEFAULT_PEC_SIGMA_EFF).unwrap();
        assert!((b / a - 4.0).abs() < 1e-12);
    }
}

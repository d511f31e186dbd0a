use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::frame::ScatteringFrame;
use super::scene::Scene;
use crate::array::AntennaArray;
use crate::error::{Error, Result};
use crate::point::Point2;
use crate::wavecore::{
    complex_wavenumber, hankel1_0, hankel_farfield, BackgroundMedium, Wavenumber,
};

/// Which incident field feeds the forward integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldModel {
    /// `(i/4) H₀⁽¹⁾(k|a − r|)`.
    #[default]
    Exact,
    /// `(i/4)` times the far-field Hankel form.
    Farfield,
}

/// Integration rule over each disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Quadrature {
    /// Center value times disk area.
    Point,
    /// Midpoint rule on a polar subgrid.
    Polar { radial: usize, angular: usize },
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature::Polar {
            radial: 8,
            angular: 16,
        }
    }
}

impl Quadrature {
    /// Same rule with `factor`× more cells along each polar axis.
    pub fn refined(self, factor: usize) -> Self {
        match self {
            Quadrature::Point => Quadrature::Point,
            Quadrature::Polar { radial, angular } => Quadrature::Polar {
                radial: radial * factor,
                angular: angular * factor,
            },
        }
    }

    /// `(node, weight)` pairs; the weights sum to the disk area.
    pub fn nodes(self, center: Point2, radius: f64) -> Vec<(Point2, f64)> {
        match self {
            Quadrature::Point => vec![(center, PI * radius * radius)],
            Quadrature::Polar { radial, angular } => {
                let dr = radius / radial as f64;
                let dth = TAU / angular as f64;
                let mut out = Vec::with_capacity(radial * angular);
                for i in 0..radial {
                    let (r0, r1) = (i as f64 * dr, (i + 1) as f64 * dr);
                    let rm = 0.5 * (r0 + r1);
                    let w = 0.5 * (r1 * r1 - r0 * r0) * dth;
                    for j in 0..angular {
                        let th = (j as f64 + 0.5) * dth;
                        out.push((center + Point2::from_polar(rm, th), w));
                    }
                }
                out
            }
        }
    }

    pub fn validate(self) -> Result<()> {
        match self {
            Quadrature::Polar { radial, angular } if radial == 0 || angular == 0 => Err(
                Error::Config("polar quadrature needs at least one cell per axis".into()),
            ),
            _ => Ok(()),
        }
    }
}

/// Additive circular complex Gaussian noise at a per-frame SNR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseSpec {
    pub snr_db: f64,
    #[serde(default)]
    pub seed: u64,
}

/// `(i/4) H₀⁽¹⁾(k|a − r|)`, the 2-D outgoing Green's function.
pub fn incident_field(k: Wavenumber, a: Point2, r: Point2) -> Result<Complex64> {
    let d = a.distance(r);
    if d == 0.0 {
        return Err(Error::Singularity(format!(
            "field point coincides with antenna at {a:?}"
        )));
    }
    Ok(Complex64::new(0.0, 0.25) * hankel1_0(k.value() * d)?)
}

/// Far-field counterpart of [`incident_field`] for antenna `n`.
pub fn farfield_incident_field(
    k: Wavenumber,
    array: &AntennaArray,
    n: usize,
    r: Point2,
) -> Result<Complex64> {
    Ok(Complex64::new(0.0, 0.25) * hankel_farfield(k, array.radius(), array.direction(n), r)?)
}

/// Forward operator bound to one array, medium and field model.
#[derive(Debug, Clone)]
pub struct BornModel<'a> {
    array: &'a AntennaArray,
    k: Wavenumber,
    prefactor: Complex64,
    field_model: FieldModel,
    quadrature: Quadrature,
}

impl<'a> BornModel<'a> {
    pub fn new(
        array: &'a AntennaArray,
        medium: &BackgroundMedium,
        field_model: FieldModel,
        quadrature: Quadrature,
    ) -> Result<Self> {
        quadrature.validate()?;
        let k = complex_wavenumber(medium)?;
        // i k0² / (4 ω μ_b), with the real lossless k0
        let prefactor = Complex64::new(
            0.0,
            medium.lossless_wavenumber_sq() / (4.0 * medium.omega() * medium.permeability_h_per_m),
        );
        Ok(Self {
            array,
            k,
            prefactor,
            field_model,
            quadrature,
        })
    }

    pub fn wavenumber(&self) -> Wavenumber {
        self.k
    }

    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }

    /// Incident fields from every antenna at `r`.
    pub fn field_vector(&self, r: Point2) -> Result<Vec<Complex64>> {
        match self.field_model {
            FieldModel::Exact => self
                .array
                .positions()
                .iter()
                .map(|&a| incident_field(self.k, a, r))
                .collect(),
            FieldModel::Farfield => (0..self.array.len())
                .map(|n| farfield_incident_field(self.k, self.array, n, r))
                .collect(),
        }
    }

    /// `(node, contrast × weight)` for every disk at time `t`.
    fn weighted_nodes(&self, scene: &Scene, t: f64) -> Result<Vec<(Point2, Complex64)>> {
        let mut out = Vec::new();
        for s in &scene.scatterers {
            s.validate()?;
            let o = scene.contrast_of(s)?;
            for (node, w) in self.quadrature.nodes(s.center_at(t), s.radius_m) {
                out.push((node, o * w));
            }
        }
        Ok(out)
    }

    pub fn s_parameter(&self, scene: &Scene, p: usize, q: usize, t: f64) -> Result<Complex64> {
        let n = self.array.len();
        if p >= n || q >= n {
            return Err(Error::Config(format!(
                "antenna index ({p}, {q}) out of range for N = {n}"
            )));
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (node, ow) in self.weighted_nodes(scene, t)? {
            let e = self.field_vector(node)?;
            acc += ow * (e[p] * e[q]);
        }
        Ok(self.prefactor * acc)
    }

    /// Noise-free frame at `t`. `diagonal_known` selects `𝕂` (true) or `𝔾`.
    pub fn frame(&self, scene: &Scene, t: f64, diagonal_known: bool) -> Result<ScatteringFrame> {
        let n = self.array.len();
        let mut acc = vec![Complex64::new(0.0, 0.0); n * n];
        for (node, ow) in self.weighted_nodes(scene, t)? {
            let e = self.field_vector(node)?;
            for p in 0..n {
                let start = if diagonal_known { p } else { p + 1 };
                for q in start..n {
                    acc[p * n + q] += ow * (e[p] * e[q]);
                }
            }
        }
        for p in 0..n {
            for q in p..n {
                let v = self.prefactor * acc[p * n + q];
                acc[p * n + q] = v;
                acc[q * n + p] = v;
            }
        }
        ScatteringFrame::from_entries(t, n, acc, diagonal_known)
    }
}

/// `S_scat(p, q, t)` under the Born approximation (0-based antenna indices).
pub fn born_s_parameter(
    scene: &Scene,
    array: &AntennaArray,
    p: usize,
    q: usize,
    t: f64,
    field_model: FieldModel,
    quadrature: Quadrature,
) -> Result<Complex64> {
    BornModel::new(array, &scene.medium, field_model, quadrature)?.s_parameter(scene, p, q, t)
}

/// Adds noise to the off-diagonal entries so that
/// `‖𝔾‖²_F / E‖noise‖²_F = 10^{snr/10}`.
pub(crate) fn add_noise(frame: &mut ScatteringFrame, snr_db: f64, rng: &mut ChaCha8Rng) {
    let n = frame.dim();
    let off_diag = (n * n - n) as f64;
    let signal = frame.frobenius_norm_sq();
    if signal == 0.0 || off_diag == 0.0 {
        return;
    }
    let per_entry = signal / (off_diag * 10f64.powf(snr_db / 10.0));
    let sigma = (per_entry / 2.0).sqrt();
    let entries = frame.entries_mut();
    for p in 0..n {
        for q in 0..n {
            if p != q {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                entries[p * n + q] += Complex64::new(sigma * re, sigma * im);
            }
        }
    }
}

/// Generator for frame `index` of a run seeded with `seed`: one ChaCha
/// stream per frame, so results do not depend on evaluation order.
pub(crate) fn frame_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Zero-diagonal frames `𝔾(t)` for each requested time.
pub fn synthesize_frames(
    scene: &Scene,
    array: &AntennaArray,
    times: &[f64],
    noise: Option<NoiseSpec>,
    field_model: FieldModel,
    quadrature: Quadrature,
) -> Result<Vec<ScatteringFrame>> {
    if times.is_empty() {
        return Err(Error::Config("no frame times requested".into()));
    }
    if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Config(
            "frame times must be finite and strictly increasing".into(),
        ));
    }
    if let Some(spec) = noise {
        if !spec.snr_db.is_finite() {
            return Err(Error::Config(format!(
                "SNR {} dB is not finite",
                spec.snr_db
            )));
        }
    }
    let model = BornModel::new(array, &scene.medium, field_model, quadrature)?;
    times
        .par_iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut frame = model.frame(scene, t, false)?;
            if let Some(spec) = noise {
                add_noise(&mut frame, spec.snr_db, &mut frame_rng(spec.seed, i));
            }
            Ok(frame)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::uniform_circular_array;
    use crate::forward::scene::{Scatterer, Trajectory};

    #[test]
    fn polar_weights_sum_to_area() {
        let nodes = Quadrature::default().nodes(Point2::new(0.01, 0.02), 0.003);
        assert_eq!(nodes.len(), 128);
        let total: f64 = nodes.iter().map(|(_, w)| w).sum();
        assert!((total - PI * 0.003f64.powi(2)).abs() < 1e-18);
        assert!(nodes
            .iter()
            .all(|(p, _)| p.distance(Point2::new(0.01, 0.02)) < 0.003));
    }

    #[test]
    fn empty_scene_gives_zero() {
        let arr = uniform_circular_array(16, 0.09).unwrap();
        let scene = Scene::empty(BackgroundMedium::reference_water());
        let v = born_s_parameter(
            &scene,
            &arr,
            0,
            8,
            0.0,
            FieldModel::Exact,
            Quadrature::default(),
        )
        .unwrap();
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn index_out_of_range() {
        let arr = uniform_circular_array(4, 0.09).unwrap();
        let scene = Scene::empty(BackgroundMedium::reference_water());
        let r = born_s_parameter(
            &scene,
            &arr,
            0,
            4,
            0.0,
            FieldModel::Exact,
            Quadrature::default(),
        );
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn reciprocity_is_exact() {
        let arr = uniform_circular_array(16, 0.09).unwrap();
        let s = Scatterer::dielectric(
            Trajectory::stationary(Point2::new(0.02, -0.01)),
            0.0032,
            3.0,
            0.0,
        );
        let scene = Scene::new(BackgroundMedium::reference_water(), vec![s]);
        for (p, q) in [(0, 8), (3, 11), (5, 6)] {
            let a = born_s_parameter(
                &scene,
                &arr,
                p,
                q,
                0.0,
                FieldModel::Exact,
                Quadrature::default(),
            )
            .unwrap();
            let b = born_s_parameter(
                &scene,
                &arr,
                q,
                p,
                0.0,
                FieldModel::Exact,
                Quadrature::default(),
            )
            .unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn frame_entries_match_single_entry_path() {
        let arr = uniform_circular_array(8, 0.09).unwrap();
        let s = Scatterer::dielectric(
            Trajectory::stationary(Point2::new(0.01, 0.03)),
            0.003,
            3.0,
            0.0,
        );
        let scene = Scene::new(BackgroundMedium::reference_water(), vec![s]);
        let model = BornModel::new(
            &arr,
            &scene.medium,
            FieldModel::Exact,
            Quadrature::default(),
        )
        .unwrap();
        let full = model.frame(&scene, 0.0, true).unwrap();
        for p in 0..8 {
            for q in 0..8 {
                let single = model.s_parameter(&scene, p, q, 0.0).unwrap();
                assert!((single - full.get(p, q)).norm() <= 1e-14 * single.norm());
            }
        }
        let g = model.frame(&scene, 0.0, false).unwrap();
        assert_eq!(g, full.without_diagonal());
    }

    #[test]
    fn antenna_inside_disk_is_singular() {
        let arr = uniform_circular_array(4, 0.09).unwrap();
        let s = Scatterer::with_contrast(
            Trajectory::stationary(Point2::new(0.09, 0.0)),
            0.001,
            Complex64::new(1.0, 0.0),
        );
        let scene = Scene::new(BackgroundMedium::reference_water(), vec![s]);
        let r = born_s_parameter(
            &scene,
            &arr,
            1,
            2,
            0.0,
            FieldModel::Exact,
            Quadrature::Point,
        );
        assert!(matches!(r, Err(Error::Singularity(_))));
    }

    #[test]
    fn rejects_bad_times_and_snr() {
        let arr = uniform_circular_array(4, 0.09).unwrap();
        let scene = Scene::empty(BackgroundMedium::reference_water());
        let q = Quadrature::default();
        assert!(synthesize_frames(&scene, &arr, &[], None, FieldModel::Exact, q).is_err());
        assert!(synthesize_frames(&scene, &arr, &[1.0, 0.5], None, FieldModel::Exact, q).is_err());
        let noise = Some(NoiseSpec {
            snr_db: f64::NAN,
            seed: 1,
        });
        assert!(matches!(
            synthesize_frames(&scene, &arr, &[0.0], noise, FieldModel::Exact, q),
            Err(Error::Config(_))
        ));
    }
}

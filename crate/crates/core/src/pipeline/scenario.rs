use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array::{
    build_disk_grid, uniform_circular_array_with_offset, AntennaArray, ImagingGrid,
};
use crate::error::{Error, Result};
use crate::forward::{
    Conductivity, FieldModel, NoiseSpec, Quadrature, Scatterer, Scene, Trajectory,
};
use crate::imaging::{QuadraticForm, SteeringMode};
use crate::wavecore::{complex_wavenumber, BackgroundMedium, Wavenumber};

/// Frame interval assumed when a scenario has a single frame.
pub const DEFAULT_FRAME_INTERVAL_S: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArraySpec {
    pub n_antennas: usize,
    pub radius_m: f64,
    #[serde(default)]
    pub angle_offset_rad: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub roi_radius_m: f64,
    pub step_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TimeSpec {
    Range {
        start_s: f64,
        stop_s: f64,
        interval_s: f64,
    },
    List(Vec<f64>),
}

impl TimeSpec {
    pub fn times(&self) -> Result<Vec<f64>> {
        let times = match self {
            TimeSpec::List(v) => v.clone(),
            &TimeSpec::Range {
                start_s,
                stop_s,
                interval_s,
            } => {
                if !(interval_s > 0.0)
                    || !start_s.is_finite()
                    || !stop_s.is_finite()
                    || stop_s < start_s
                {
                    return Err(Error::Config(format!(
                        "bad time range start={start_s} stop={stop_s} interval={interval_s}"
                    )));
                }
                let count = ((stop_s - start_s) / interval_s + 1e-9).floor() as usize + 1;
                (0..count)
                    .map(|i| start_s + i as f64 * interval_s)
                    .collect()
            }
        };
        if times.is_empty() {
            return Err(Error::Config("scenario has no frame times".into()));
        }
        if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config(
                "frame times must be finite and strictly increasing".into(),
            ));
        }
        Ok(times)
    }
}

/// Objects from the reference measurement set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    /// Plastic bar, 3ε₀, 20 mm.
    D1,
    /// Steel bar, 6.40 mm.
    D2,
    /// Steel bar, 6.55 mm.
    D3,
    /// Plastic bar, 2.5ε₀, 6.40 mm.
    D4,
}

impl Preset {
    pub fn diameter_m(self) -> f64 {
        match self {
            Preset::D1 => 0.020,
            Preset::D2 | Preset::D4 => 0.0064,
            Preset::D3 => 0.00655,
        }
    }

    pub fn scatterer(self, trajectory: Trajectory) -> Scatterer {
        let radius = self.diameter_m() / 2.0;
        match self {
            Preset::D1 => Scatterer::dielectric(trajectory, radius, 3.0, 0.0),
            Preset::D4 => Scatterer::dielectric(trajectory, radius, 2.5, 0.0),
            Preset::D2 | Preset::D3 => Scatterer::conductor(trajectory, radius),
        }
    }
}

/// A scatterer entry; explicit fields override the preset's.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScattererSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<Preset>,
    pub trajectory: Trajectory,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_permittivity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conductivity_s_per_m: Option<Conductivity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contrast_override: Option<Complex64>,
}

impl ScattererSpec {
    pub fn resolve(&self) -> Result<Scatterer> {
        let mut s = match self.preset {
            Some(p) => p.scatterer(self.trajectory.clone()),
            None => Scatterer {
                trajectory: self.trajectory.clone(),
                radius_m: self.radius_m.ok_or_else(|| {
                    Error::Config("scatterer without preset needs radius_m".into())
                })?,
                rel_permittivity: None,
                conductivity_s_per_m: Conductivity::default(),
                contrast_override: None,
            },
        };
        if let Some(r) = self.radius_m {
            s.radius_m = r;
        }
        if let Some(e) = self.rel_permittivity {
            s.rel_permittivity = Some(e);
        }
        if let Some(c) = self.conductivity_s_per_m {
            s.conductivity_s_per_m = c;
        }
        if self.contrast_override.is_some() {
            s.contrast_override = self.contrast_override;
        }
        s.validate()?;
        Ok(s)
    }
}

/// Tracker settings; absent lengths are derived from the wavelength and the
/// frame interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrackerSpec {
    #[serde(default = "default_rel_threshold")]
    pub rel_threshold: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_sep_m: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate_m: Option<f64>,
    #[serde(default = "default_v_max")]
    pub v_max_m_per_s: f64,
    #[serde(default = "default_max_missed")]
    pub max_missed: usize,
}

fn default_rel_threshold() -> f64 {
    0.5
}

fn default_v_max() -> f64 {
    0.05
}

fn default_max_missed() -> usize {
    3
}

impl Default for TrackerSpec {
    fn default() -> Self {
        Self {
            rel_threshold: default_rel_threshold(),
            min_sep_m: None,
            gate_m: None,
            v_max_m_per_s: default_v_max(),
            max_missed: default_max_missed(),
        }
    }
}

/// Tracker settings with every length resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackerParams {
    pub rel_threshold: f64,
    pub min_sep_m: f64,
    pub gate_m: f64,
    pub max_missed: usize,
}

impl TrackerSpec {
    /// `min_sep` defaults to λ/2 and the gate to `3·interval·v_max`.
    pub fn resolve(&self, wavelength_m: f64, interval_s: f64) -> Result<TrackerParams> {
        let p = TrackerParams {
            rel_threshold: self.rel_threshold,
            min_sep_m: self.min_sep_m.unwrap_or(wavelength_m / 2.0),
            gate_m: self.gate_m.unwrap_or(3.0 * interval_s * self.v_max_m_per_s),
            max_missed: self.max_missed,
        };
        if !(p.rel_threshold > 0.0 && p.rel_threshold <= 1.0) {
            return Err(Error::Config(format!(
                "rel_threshold {} must lie in (0, 1]",
                p.rel_threshold
            )));
        }
        if !(p.min_sep_m >= 0.0) || !(p.gate_m >= 0.0) {
            return Err(Error::Config("tracker lengths must be non-negative".into()));
        }
        Ok(p)
    }
}

/// Everything needed to simulate, image and track one experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub medium: BackgroundMedium,
    pub array: ArraySpec,
    pub grid: GridSpec,
    #[serde(default)]
    pub scatterers: Vec<ScattererSpec>,
    pub times: TimeSpec,
    #[serde(default)]
    pub noise: Option<NoiseSpec>,
    #[serde(default)]
    pub field_model: FieldModel,
    #[serde(default)]
    pub imaging_mode: SteeringMode,
    #[serde(default)]
    pub imaging_form: QuadraticForm,
    #[serde(default)]
    pub quadrature: Quadrature,
    #[serde(default)]
    pub tracker: TrackerSpec,
    #[serde(default = "default_sigma_eff")]
    pub pec_sigma_eff_s_per_m: f64,
}

fn default_sigma_eff() -> f64 {
    crate::forward::DEFAULT_PEC_SIGMA_EFF
}

impl Scenario {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_pretty(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.medium.validate()?;
        self.array()?;
        self.imaging_grid()?;
        self.scene()?;
        self.frame_times()?;
        self.quadrature.validate()?;
        self.tracker_params()?;
        if let Some(n) = self.noise {
            if !n.snr_db.is_finite() {
                return Err(Error::Config(format!("SNR {} dB is not finite", n.snr_db)));
            }
        }
        Ok(())
    }

    pub fn wavenumber(&self) -> Result<Wavenumber> {
        complex_wavenumber(&self.medium)
    }

    pub fn array(&self) -> Result<AntennaArray> {
        uniform_circular_array_with_offset(
            self.array.n_antennas,
            self.array.radius_m,
            self.array.angle_offset_rad,
        )
    }

    pub fn imaging_grid(&self) -> Result<ImagingGrid> {
        build_disk_grid(self.grid.roi_radius_m, self.grid.step_m)
    }

    pub fn scene(&self) -> Result<Scene> {
        let scatterers = self
            .scatterers
            .iter()
            .map(ScattererSpec::resolve)
            .collect::<Result<Vec<_>>>()?;
        let mut scene = Scene::new(self.medium, scatterers);
        scene.pec_sigma_eff_s_per_m = self.pec_sigma_eff_s_per_m;
        Ok(scene)
    }

    pub fn frame_times(&self) -> Result<Vec<f64>> {
        self.times.times()
    }

    /// Spacing of the first two frames, or the default cadence.
    pub fn frame_interval(&self) -> Result<f64> {
        let t = self.frame_times()?;
        Ok(if t.len() > 1 {
            t[1] - t[0]
        } else {
            DEFAULT_FRAME_INTERVAL_S
        })
    }

    pub fn tracker_params(&self) -> Result<TrackerParams> {
        self.tracker
            .resolve(self.wavenumber()?.wavelength(), self.frame_interval()?)
    }
}

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::point::Point2;
use crate::wavecore::{complex_wavenumber, BackgroundMedium, LOW_LOSS_RATIO};

/// Effective conductivity (S/m) standing in for a perfect conductor.
pub const DEFAULT_PEC_SIGMA_EFF: f64 = 10.0;

/// `(time_s, x, y)`; serialised as a three-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Waypoint {
    pub time_s: f64,
    pub position: Point2,
}

impl Waypoint {
    pub fn new(time_s: f64, x: f64, y: f64) -> Self {
        Self {
            time_s,
            position: Point2::new(x, y),
        }
    }
}

impl From<[f64; 3]> for Waypoint {
    fn from(v: [f64; 3]) -> Self {
        Waypoint::new(v[0], v[1], v[2])
    }
}

impl From<Waypoint> for [f64; 3] {
    fn from(w: Waypoint) -> Self {
        [w.time_s, w.position.x, w.position.y]
    }
}

/// Piecewise-linear path through time-ordered waypoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Waypoint>", into = "Vec<Waypoint>")]
pub struct Trajectory {
    waypoints: Vec<Waypoint>,
}

impl Trajectory {
    pub fn new(waypoints: Vec<Waypoint>) -> Result<Self> {
        if waypoints.is_empty() {
            return Err(Error::Config("trajectory has no waypoints".into()));
        }
        if waypoints
            .iter()
            .any(|w| !w.time_s.is_finite() || !w.position.is_finite())
        {
            return Err(Error::Config("trajectory waypoints must be finite".into()));
        }
        if waypoints.windows(2).any(|w| !(w[1].time_s > w[0].time_s)) {
            return Err(Error::Config(
                "trajectory times must be strictly increasing".into(),
            ));
        }
        Ok(Self { waypoints })
    }

    pub fn stationary(at: Point2) -> Self {
        Self {
            waypoints: vec![Waypoint {
                time_s: 0.0,
                position: at,
            }],
        }
    }

    /// Straight segment from `from` at `t0` to `to` at `t1`.
    pub fn linear(t0: f64, from: Point2, t1: f64, to: Point2) -> Result<Self> {
        Self::new(vec![
            Waypoint {
                time_s: t0,
                position: from,
            },
            Waypoint {
                time_s: t1,
                position: to,
            },
        ])
    }

    pub fn waypoints(&self) -> &[Waypoint] {
        &self.waypoints
    }

    pub fn position_at(&self, t: f64) -> Point2 {
        let w = &self.waypoints;
        let first = w[0];
        let last = w[w.len() - 1];
        if t <= first.time_s {
            return first.position;
        }
        if t >= last.time_s {
            return last.position;
        }
        let i = w.partition_point(|p| p.time_s <= t);
        let (a, b) = (w[i - 1], w[i]);
        if t == a.time_s {
            return a.position;
        }
        let f = (t - a.time_s) / (b.time_s - a.time_s);
        a.position + (b.position - a.position) * f
    }

    /// Rigid rotation of every waypoint about the origin.
    pub fn rotated(&self, angle: f64) -> Self {
        Self {
            waypoints: self
                .waypoints
                .iter()
                .map(|w| Waypoint {
                    time_s: w.time_s,
                    position: w.position.rotated(angle),
                })
                .collect(),
        }
    }
}

impl TryFrom<Vec<Waypoint>> for Trajectory {
    type Error = Error;
    fn try_from(w: Vec<Waypoint>) -> Result<Self> {
        Trajectory::new(w)
    }
}

impl From<Trajectory> for Vec<Waypoint> {
    fn from(t: Trajectory) -> Self {
        t.waypoints
    }
}

/// Piecewise-linear interpolation, clamped outside the waypoint span.
pub fn position_at(traj: &Trajectory, t: f64) -> Point2 {
    traj.position_at(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Conductivity {
    Finite(f64),
    /// Perfect conductor; serialised as the string `"infinite"`.
    Infinite(InfiniteTag),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfiniteTag {
    Infinite,
}

impl Conductivity {
    pub const INFINITE: Conductivity = Conductivity::Infinite(InfiniteTag::Infinite);
}

impl Default for Conductivity {
    fn default() -> Self {
        Conductivity::Finite(0.0)
    }
}

/// A small moving disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scatterer {
    pub trajectory: Trajectory,
    pub radius_m: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_permittivity: Option<f64>,
    #[serde(default)]
    pub conductivity_s_per_m: Conductivity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contrast_override: Option<Complex64>,
}

impl Scatterer {
    pub fn dielectric(
        trajectory: Trajectory,
        radius_m: f64,
        rel_permittivity: f64,
        conductivity: f64,
    ) -> Self {
        Self {
            trajectory,
            radius_m,
            rel_permittivity: Some(rel_permittivity),
            conductivity_s_per_m: Conductivity::Finite(conductivity),
            contrast_override: None,
        }
    }

    pub fn conductor(trajectory: Trajectory, radius_m: f64) -> Self {
        Self {
            trajectory,
            radius_m,
            rel_permittivity: None,
            conductivity_s_per_m: Conductivity::INFINITE,
            contrast_override: None,
        }
    }

    pub fn with_contrast(trajectory: Trajectory, radius_m: f64, contrast: Complex64) -> Self {
        Self {
            trajectory,
            radius_m,
            rel_permittivity: None,
            conductivity_s_per_m: Conductivity::default(),
            contrast_override: Some(contrast),
        }
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius_m * self.radius_m
    }

    pub fn center_at(&self, t: f64) -> Point2 {
        self.trajectory.position_at(t)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius_m > 0.0) || !self.radius_m.is_finite() {
            return Err(Error::Config(format!(
                "scatterer radius {} must be positive",
                self.radius_m
            )));
        }
        if let Some(e) = self.rel_permittivity {
            if !(e > 0.0) || !e.is_finite() {
                return Err(Error::Config(format!(
                    "relative permittivity {e} must be positive"
                )));
            }
        }
        if let Conductivity::Finite(s) = self.conductivity_s_per_m {
            if !(s >= 0.0) || !s.is_finite() {
                return Err(Error::Config(format!(
                    "conductivity {s} must be non-negative"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    pub scatterers: Vec<Scatterer>,
    pub medium: BackgroundMedium,
    /// Effective conductivity used for `"infinite"` scatterers.
    #[serde(default = "default_sigma_eff")]
    pub pec_sigma_eff_s_per_m: f64,
}

fn default_sigma_eff() -> f64 {
    DEFAULT_PEC_SIGMA_EFF
}

impl Scene {
    pub fn new(medium: BackgroundMedium, scatterers: Vec<Scatterer>) -> Self {
        Self {
            scatterers,
            medium,
            pec_sigma_eff_s_per_m: DEFAULT_PEC_SIGMA_EFF,
        }
    }

    pub fn empty(medium: BackgroundMedium) -> Self {
        Self::new(medium, Vec::new())
    }

    pub fn contrast_of(&self, s: &Scatterer) -> Result<Complex64> {
        contrast_with(s, &self.medium, self.pec_sigma_eff_s_per_m)
    }
}

/// `(ε_m − ε_b)/ε_b + i(σ_m − σ_b)/(ωε_b)` with the default PEC stand-in.
pub fn contrast(s: &Scatterer, medium: &BackgroundMedium) -> Result<Complex64> {
    contrast_with(s, medium, DEFAULT_PEC_SIGMA_EFF)
}

/// As [`contrast`]; an infinite conductivity maps to
/// `−1 + i·σ_eff/(ωε_b)` and an override always wins.
pub fn contrast_with(
    s: &Scatterer,
    medium: &BackgroundMedium,
    pec_sigma_eff: f64,
) -> Result<Complex64> {
    if let Some(c) = s.contrast_override {
        return Ok(c);
    }
    let w_eps = medium.omega() * medium.permittivity();
    match (s.conductivity_s_per_m, s.rel_permittivity) {
        (Conductivity::Infinite(_), _) => Ok(Complex64::new(-1.0, pec_sigma_eff / w_eps)),
        (Conductivity::Finite(sigma), Some(eps_r)) => Ok(Complex64::new(
            (eps_r - medium.rel_permittivity) / medium.rel_permittivity,
            (sigma - medium.conductivity_s_per_m) / w_eps,
        )),
        (Conductivity::Finite(_), None) => Err(Error::Config(
            "scatterer needs a permittivity, an infinite conductivity or a contrast override"
                .into(),
        )),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObjectCheck {
    pub index: usize,
    /// `max(√(ε_m/ε_b) − 1, 0)·diam`; `None` when the object has no permittivity.
    pub size_term_m: Option<f64>,
    pub quarter_wavelength_m: f64,
    pub size_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MotionIssue {
    Overlap {
        time_s: f64,
        first: usize,
        second: usize,
    },
    OutsideRoi {
        time_s: f64,
        index: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SceneReport {
    pub objects: Vec<ObjectCheck>,
    pub loss_ratio: f64,
    pub low_loss_ok: bool,
    pub motion: Vec<MotionIssue>,
}

impl SceneReport {
    pub fn all_ok(&self) -> bool {
        self.low_loss_ok
            && self.motion.is_empty()
            && self.objects.iter().all(|o| o.size_ok != Some(false))
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.low_loss_ok {
            out.push(format!(
                "background is not low-loss: ωε_b/σ_b = {:.3} < {LOW_LOSS_RATIO}",
                self.loss_ratio
            ));
        }
        for o in &self.objects {
            if o.size_ok == Some(false) {
                out.push(format!(
                    "object {}: (√(ε_m/ε_b)−1)·diam = {:.4e} m is not below λ/4 = {:.4e} m",
                    o.index,
                    o.size_term_m.unwrap_or(f64::NAN),
                    o.quarter_wavelength_m
                ));
            }
        }
        for m in &self.motion {
            match m {
                MotionIssue::Overlap {
                    time_s,
                    first,
                    second,
                } => out.push(format!(
                    "t = {time_s}: objects {first} and {second} overlap"
                )),
                MotionIssue::OutsideRoi { time_s, index } => {
                    out.push(format!("t = {time_s}: object {index} leaves the ROI"))
                }
            }
        }
        out
    }
}

/// Admissibility report: the size condition per object and the low-loss
/// condition on the background. Never blocks a simulation.
///
/// When `times` and `roi_radius_m` are supplied, disks are also checked for
/// pairwise overlap and for leaving the ROI at each sampled time.
pub fn validate_scene(
    scene: &Scene,
    times: &[f64],
    roi_radius_m: Option<f64>,
) -> Result<SceneReport> {
    let medium = &scene.medium;
    let k = complex_wavenumber(medium)?;
    let quarter = k.wavelength() / 4.0;
    let objects = scene
        .scatterers
        .iter()
        .enumerate()
        .map(|(index, s)| {
            let size_term_m = match (
                s.conductivity_s_per_m,
                s.rel_permittivity,
                s.contrast_override,
            ) {
                (Conductivity::Finite(_), Some(eps_r), None) => {
                    let excess = ((eps_r / medium.rel_permittivity).sqrt() - 1.0).max(0.0);
                    Some(excess * 2.0 * s.radius_m)
                }
                _ => None,
            };
            ObjectCheck {
                index,
                size_term_m,
                quarter_wavelength_m: quarter,
                size_ok: size_term_m.map(|v| v < quarter),
            }
        })
        .collect();

    let mut motion = Vec::new();
    for &t in times {
        let centers: Vec<Point2> = scene.scatterers.iter().map(|s| s.center_at(t)).collect();
        for i in 0..centers.len() {
            for j in i + 1..centers.len() {
                let gap = centers[i].distance(centers[j]);
                if gap < scene.scatterers[i].radius_m + scene.scatterers[j].radius_m {
                    motion.push(MotionIssue::Overlap {
                        time_s: t,
                        first: i,
                        second: j,
                    });
                }
            }
            if let Some(roi) = roi_radius_m {
                if centers[i].norm() + scene.scatterers[i].radius_m > roi {
                    motion.push(MotionIssue::OutsideRoi {
                        time_s: t,
                        index: i,
                    });
                }
            }
        }
    }

    let loss_ratio = medium.loss_ratio();
    Ok(SceneReport {
        objects,
        loss_ratio,
        low_loss_ok: loss_ratio >= LOW_LOSS_RATIO,
        motion,
    })
}

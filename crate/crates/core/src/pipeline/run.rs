use std::sync::Arc;

use super::metrics::{argmax_error, off_target_energy_fraction, TruthFrame};
use super::peaks::extract_peaks;
use super::scenario::Scenario;
use super::tracking::{associate_with, Track};
use crate::array::validate_far_condition;
use crate::error::{Error, Result};
use crate::forward::{synthesize_frames, validate_scene, ScatteringFrame};
use crate::imaging::{Imager, ImagingMap};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameMetrics {
    pub frame: usize,
    pub time_s: f64,
    /// `None` when the scenario has no objects to compare with.
    pub argmax_err_m: Option<f64>,
    pub n_peaks: usize,
}

#[derive(Debug, Clone)]
pub struct TrackingRun {
    pub tracks: Vec<Track>,
    pub maps: Vec<ImagingMap>,
    pub metrics: Vec<FrameMetrics>,
}

/// Non-fatal problems with the scenario geometry.
pub fn scenario_warnings(scenario: &Scenario) -> Result<Vec<String>> {
    let scene = scenario.scene()?;
    let times = scenario.frame_times()?;
    let mut out = validate_scene(&scene, &times, Some(scenario.grid.roi_radius_m))?.warnings();
    let far = validate_far_condition(
        &scenario.array()?,
        &scenario.imaging_grid()?,
        scenario.wavenumber()?,
    );
    if !far.pass {
        out.push(format!(
            "far-field condition fails: min |k_b||a_n − r| = {:.4} over the grid",
            far.min_value
        ));
    }
    Ok(out)
}

/// Noise-free or noisy frames for every scenario time.
pub fn simulate(scenario: &Scenario) -> Result<Vec<ScatteringFrame>> {
    synthesize_frames(
        &scenario.scene()?,
        &scenario.array()?,
        &scenario.frame_times()?,
        scenario.noise,
        scenario.field_model,
        scenario.quadrature,
    )
}

/// True object centres at each time; empty when the scene has no objects.
pub fn ground_truth(scenario: &Scenario, times: &[f64]) -> Result<Vec<TruthFrame>> {
    let scene = scenario.scene()?;
    if scene.scatterers.is_empty() {
        return Ok(Vec::new());
    }
    Ok(times
        .iter()
        .map(|&t| TruthFrame {
            time_s: t,
            positions: scene.scatterers.iter().map(|s| s.center_at(t)).collect(),
        })
        .collect())
}

pub fn imager_for(scenario: &Scenario) -> Result<Imager> {
    Imager::new(
        &scenario.array()?,
        scenario.wavenumber()?,
        Arc::new(scenario.imaging_grid()?),
        scenario.imaging_mode,
        scenario.imaging_form,
    )
}

/// Synthesises the scenario's frames and tracks through them.
pub fn run_tracking(scenario: &Scenario) -> Result<TrackingRun> {
    let frames = simulate(scenario)?;
    run_tracking_on_frames(scenario, &frames)
}

/// Images and tracks the given frames in time order. Each frame's tracks
/// depend only on that frame and the ones before it.
pub fn run_tracking_on_frames(
    scenario: &Scenario,
    frames: &[ScatteringFrame],
) -> Result<TrackingRun> {
    let n = scenario.array.n_antennas;
    if let Some(bad) = frames.iter().find(|f| f.dim() != n) {
        return Err(Error::Shape {
            expected: n,
            got: bad.dim(),
        });
    }
    if frames.windows(2).any(|w| !(w[1].time() > w[0].time())) {
        return Err(Error::Config(
            "frame times must be strictly increasing".into(),
        ));
    }
    let params = scenario.tracker_params()?;
    let imager = imager_for(scenario)?;
    let times: Vec<f64> = frames.iter().map(|f| f.time()).collect();
    let truth = ground_truth(scenario, &times)?;

    let mut tracks = Vec::new();
    let mut maps = Vec::with_capacity(frames.len());
    let mut metrics = Vec::with_capacity(frames.len());
    for (i, frame) in frames.iter().enumerate() {
        let map = imager.map(frame)?;
        let peaks = extract_peaks(&map, params.rel_threshold, params.min_sep_m)?;
        tracks = associate_with(
            tracks,
            &peaks,
            frame.time(),
            params.gate_m,
            params.max_missed,
        );
        metrics.push(FrameMetrics {
            frame: i,
            time_s: frame.time(),
            argmax_err_m: truth.get(i).and_then(|t| argmax_error(&map, &t.positions)),
            n_peaks: peaks.len(),
        });
        maps.push(map);
    }
    Ok(TrackingRun {
        tracks,
        maps,
        metrics,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n_antennas: usize,
    /// Mean over frames of the map share outside λ/2 of every object.
    pub off_target_fraction: f64,
    pub mean_argmax_err_m: f64,
}

/// Repeats the scenario for each array size.
pub fn sweep(scenario: &Scenario, n_list: &[usize]) -> Result<Vec<SweepRow>> {
    if scenario.scatterers.is_empty() {
        return Err(Error::Config("sweep needs at least one object".into()));
    }
    let radius = scenario.wavenumber()?.wavelength() / 2.0;
    n_list
        .iter()
        .map(|&n| {
            let mut s = scenario.clone();
            s.array.n_antennas = n;
            s.validate()?;
            let frames = simulate(&s)?;
            let imager = imager_for(&s)?;
            let times: Vec<f64> = frames.iter().map(|f| f.time()).collect();
            let truth = ground_truth(&s, &times)?;
            let mut frac = 0.0;
            let mut err = 0.0;
            for (frame, t) in frames.iter().zip(&truth) {
                let map = imager.map(frame)?;
                frac += off_target_energy_fraction(&map, &t.positions, radius);
                err += argmax_error(&map, &t.positions).unwrap_or(f64::NAN);
            }
            let m = frames.len() as f64;
            Ok(SweepRow {
                n_antennas: n,
                off_target_fraction: frac / m,
                mean_argmax_err_m: err / m,
            })
        })
        .collect()
}

//! Scenario files, peak extraction, frame-to-frame tracking and the metrics
//! reported by the command-line tool.

mod io;
mod metrics;
mod peaks;
mod run;
mod scenario;
mod tracking;

pub use io::{
    write_metrics_csv, write_sweep_csv, write_tracks_csv, METRICS_HEADER, SWEEP_HEADER,
    TRACKS_HEADER,
};
pub use metrics::{argmax_error, localization_rmse, off_target_energy_fraction, TruthFrame};
pub use peaks::{extract_peaks, Peak};
pub use run::{
    ground_truth, imager_for, run_tracking, run_tracking_on_frames, scenario_warnings, simulate,
    sweep, FrameMetrics, SweepRow, TrackingRun,
};
pub use scenario::{
    ArraySpec, GridSpec, Preset, ScattererSpec, Scenario, TimeSpec, TrackerParams, TrackerSpec,
    DEFAULT_FRAME_INTERVAL_S,
};
pub use tracking::{
    associate, associate_with, Track, TrackSample, TrackStatus, DEFAULT_MAX_MISSED,
};

use std::io::Write;

use super::run::{FrameMetrics, SweepRow};
use super::tracking::{Track, TrackSample};
use crate::error::Result;
use crate::forward::fmt_real;

pub const TRACKS_HEADER: &str = "t,track_id,x,y,value";
pub const METRICS_HEADER: &str = "frame,argmax_err_m,n_peaks";
pub const SWEEP_HEADER: &str = "n_antennas,off_target_fraction,mean_argmax_err_m";

/// One row per track sample, ordered by time then track id.
pub fn write_tracks_csv<W: Write>(mut out: W, tracks: &[Track]) -> Result<()> {
    let mut rows: Vec<(u64, &TrackSample)> = tracks
        .iter()
        .flat_map(|t| t.samples.iter().map(move |s| (t.id, s)))
        .collect();
    rows.sort_by(|a, b| a.1.time_s.total_cmp(&b.1.time_s).then(a.0.cmp(&b.0)));
    writeln!(out, "{TRACKS_HEADER}")?;
    for (id, s) in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_real(s.time_s),
            id,
            fmt_real(s.position.x),
            fmt_real(s.position.y),
            fmt_real(s.value)
        )?;
    }
    out.flush()?;
    Ok(())
}

/// Frame indices are 0-based; a missing argmax error is written as `nan`.
pub fn write_metrics_csv<W: Write>(mut out: W, metrics: &[FrameMetrics]) -> Result<()> {
    writeln!(out, "{METRICS_HEADER}")?;
    for m in metrics {
        let err = m.argmax_err_m.map_or_else(|| "nan".to_string(), fmt_real);
        writeln!(out, "{},{},{}", m.frame, err, m.n_peaks)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(mut out: W, rows: &[SweepRow]) -> Result<()> {
    writeln!(
        out,
        "# off_target_fraction: map share outside half a wavelength of every object"
    )?;
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{}",
            r.n_antennas,
            fmt_real(r.off_target_fraction),
            fmt_real(r.mean_argmax_err_m)
        )?;
    }
    out.flush()?;
    Ok(())
}

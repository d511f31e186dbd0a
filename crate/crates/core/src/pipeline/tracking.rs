use serde::Serialize;

use super::peaks::Peak;
use crate::point::Point2;

pub const DEFAULT_MAX_MISSED: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrackStatus {
    Active,
    Coasting,
    Dead,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrackSample {
    pub time_s: f64,
    pub position: Point2,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Track {
    pub id: u64,
    pub samples: Vec<TrackSample>,
    pub status: TrackStatus,
    /// Consecutive frames without a matching peak.
    pub missed: usize,
}

impl Track {
    pub fn last_position(&self) -> Point2 {
        self.samples.last().map_or(Point2::ORIGIN, |s| s.position)
    }

    pub fn is_live(&self) -> bool {
        self.status != TrackStatus::Dead
    }
}

/// Greedy nearest-neighbour association with the default miss limit.
pub fn associate(tracks: Vec<Track>, peaks: &[Peak], t: f64, gate_m: f64) -> Vec<Track> {
    associate_with(tracks, peaks, t, gate_m, DEFAULT_MAX_MISSED)
}

/// Pairs live tracks with peaks shortest distance first, within `gate_m`.
/// Unmatched peaks start new tracks; unmatched tracks coast and die after
/// `max_missed` consecutive misses.
pub fn associate_with(
    mut tracks: Vec<Track>,
    peaks: &[Peak],
    t: f64,
    gate_m: f64,
    max_missed: usize,
) -> Vec<Track> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (ti, track) in tracks.iter().enumerate() {
        if !track.is_live() {
            continue;
        }
        for (pi, peak) in peaks.iter().enumerate() {
            let d = track.last_position().distance(peak.position);
            if d <= gate_m {
                pairs.push((d, ti, pi));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut track_used = vec![false; tracks.len()];
    let mut peak_used = vec![false; peaks.len()];
    for (_, ti, pi) in pairs {
        if track_used[ti] || peak_used[pi] {
            continue;
        }
        track_used[ti] = true;
        peak_used[pi] = true;
        let track = &mut tracks[ti];
        track.samples.push(TrackSample {
            time_s: t,
            position: peaks[pi].position,
            value: peaks[pi].value,
        });
        track.status = TrackStatus::Active;
        track.missed = 0;
    }
    for (track, used) in tracks.iter_mut().zip(&track_used) {
        if track.is_live() && !used {
            track.missed += 1;
            track.status = if track.missed >= max_missed {
                TrackStatus::Dead
            } else {
                TrackStatus::Coasting
            };
        }
    }
    let mut next_id = tracks.iter().map(|t| t.id + 1).max().unwrap_or(1);
    for (peak, used) in peaks.iter().zip(&peak_used) {
        if !used {
            tracks.push(Track {
                id: next_id,
                samples: vec![TrackSample {
                    time_s: t,
                    position: peak.position,
                    value: peak.value,
                }],
                status: TrackStatus::Active,
                missed: 0,
            });
            next_id += 1;
        }
    }
    tracks
}

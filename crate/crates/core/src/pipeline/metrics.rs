use crate::error::{Error, Result};
use crate::imaging::ImagingMap;
use crate::point::Point2;

use super::tracking::Track;

/// Ground-truth object positions at one frame time.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthFrame {
    pub time_s: f64,
    pub positions: Vec<Point2>,
}

const TIME_MATCH_TOLERANCE: f64 = 1e-9;

/// Root-mean-square position error over matched samples.
///
/// At each truth time the track samples recorded at that time are paired with
/// the true positions greedily, shortest distance first, regardless of id.
pub fn localization_rmse(tracks: &[Track], truth: &[TruthFrame]) -> Result<f64> {
    let mut sum_sq = 0.0;
    let mut count = 0usize;
    for frame in truth {
        let samples: Vec<Point2> = tracks
            .iter()
            .flat_map(|t| t.samples.iter())
            .filter(|s| (s.time_s - frame.time_s).abs() <= TIME_MATCH_TOLERANCE)
            .map(|s| s.position)
            .collect();
        let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
        for (i, s) in samples.iter().enumerate() {
            for (j, p) in frame.positions.iter().enumerate() {
                pairs.push((s.distance(*p), i, j));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        let mut used_s = vec![false; samples.len()];
        let mut used_p = vec![false; frame.positions.len()];
        for (d, i, j) in pairs {
            if used_s[i] || used_p[j] {
                continue;
            }
            used_s[i] = true;
            used_p[j] = true;
            sum_sq += d * d;
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::Metric(
            "no track sample shares a time with the ground truth".into(),
        ));
    }
    Ok((sum_sq / count as f64).sqrt())
}

/// Distance from the global argmax to the nearest true position.
pub fn argmax_error(map: &ImagingMap, truth: &[Point2]) -> Option<f64> {
    let (_, at, _) = map.argmax();
    truth.iter().map(|p| p.distance(at)).min_by(f64::total_cmp)
}

/// Share of the map's total value lying outside disks of `radius_m` around
/// the true positions.
pub fn off_target_energy_fraction(map: &ImagingMap, truth: &[Point2], radius_m: f64) -> f64 {
    let mut total = 0.0;
    let mut outside = 0.0;
    for (p, &v) in map.grid().points().iter().zip(map.values()) {
        total += v;
        if truth.iter().all(|c| c.distance(*p) > radius_m) {
            outside += v;
        }
    }
    if total > 0.0 {
        outside / total
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::tracking::{TrackSample, TrackStatus};

    fn track(id: u64, pts: &[(f64, f64, f64)]) -> Track {
        Track {
            id,
            samples: pts
                .iter()
                .map(|&(t, x, y)| TrackSample {
                    time_s: t,
                    position: Point2::new(x, y),
                    value: 1.0,
                })
                .collect(),
            status: TrackStatus::Active,
            missed: 0,
        }
    }

    fn truth(pts: &[(f64, f64, f64)]) -> Vec<TruthFrame> {
        pts.iter()
            .map(|&(t, x, y)| TruthFrame {
                time_s: t,
                positions: vec![Point2::new(x, y)],
            })
            .collect()
    }

    #[test]
    fn identical_track_has_zero_error() {
        let pts = [(0.0, 0.01, 0.0), (0.5, 0.02, 0.0)];
        assert_eq!(
            localization_rmse(&[track(1, &pts)], &truth(&pts)).unwrap(),
            0.0
        );
    }

    #[test]
    fn constant_offset_gives_offset() {
        let pts = [(0.0, 0.01, 0.0), (0.5, 0.02, 0.01), (1.0, -0.03, 0.0)];
        let shifted: Vec<_> = pts.iter().map(|&(t, x, y)| (t, x + 0.004, y)).collect();
        let r = localization_rmse(&[track(1, &shifted)], &truth(&pts)).unwrap();
        assert!((r - 0.004).abs() < 1e-15);
    }

    #[test]
    fn no_common_time_is_an_error() {
        let r = localization_rmse(&[track(1, &[(0.0, 0.0, 0.0)])], &truth(&[(1.0, 0.0, 0.0)]));
        assert!(matches!(r, Err(Error::Metric(_))));
    }

    #[test]
    fn matching_ignores_track_identity() {
        let a = track(1, &[(0.0, 0.02, 0.0)]);
        let b = track(2, &[(0.0, -0.02, 0.0)]);
        let t = vec![TruthFrame {
            time_s: 0.0,
            positions: vec![Point2::new(-0.02, 0.0), Point2::new(0.02, 0.0)],
        }];
        assert_eq!(localization_rmse(&[a, b], &t).unwrap(), 0.0);
    }
}

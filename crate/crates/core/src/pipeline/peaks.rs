use crate::error::{Error, Result};
use crate::imaging::ImagingMap;
use crate::point::Point2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub position: Point2,
    pub value: f64,
    /// Index of the grid point.
    pub index: usize,
}

const NEIGHBOURS: [(i64, i64); 8] = [
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, 0),
    (1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
];

/// Local maxima over the 8-neighbourhood at or above `rel_threshold·max`,
/// thinned so that no two kept peaks are closer than `min_sep_m`.
///
/// Plateaus keep their first point in grid order. Peaks are returned by
/// decreasing value, ties in grid order.
pub fn extract_peaks(map: &ImagingMap, rel_threshold: f64, min_sep_m: f64) -> Result<Vec<Peak>> {
    if !(rel_threshold > 0.0 && rel_threshold <= 1.0) {
        return Err(Error::Config(format!(
            "rel_threshold {rel_threshold} must lie in (0, 1]"
        )));
    }
    if !(min_sep_m >= 0.0) {
        return Err(Error::Config(format!(
            "min_sep {min_sep_m} must be non-negative"
        )));
    }
    let grid = map.grid();
    let values = map.values();
    let max = map.max_value();
    if !(max > 0.0) {
        return Ok(Vec::new());
    }
    let floor = rel_threshold * max;
    let mut candidates: Vec<Peak> = Vec::new();
    for (i, (&(ix, iy), &v)) in grid.cells().iter().zip(values).enumerate() {
        if v < floor {
            continue;
        }
        let is_max = NEIGHBOURS
            .iter()
            .all(|&(dx, dy)| match grid.index_of(ix + dx, iy + dy) {
                Some(j) => values[j] < v || (values[j] == v && j > i),
                None => true,
            });
        if is_max {
            candidates.push(Peak {
                position: grid.points()[i],
                value: v,
                index: i,
            });
        }
    }
    candidates.sort_by(|a, b| b.value.total_cmp(&a.value).then(a.index.cmp(&b.index)));
    let mut kept: Vec<Peak> = Vec::new();
    for c in candidates {
        if kept
            .iter()
            .all(|k| k.position.distance(c.position) >= min_sep_m)
        {
            kept.push(c);
        }
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::array::build_disk_grid;

    fn bumps(centers: &[(Point2, f64)]) -> ImagingMap {
        let grid = Arc::new(build_disk_grid(0.05, 0.002).unwrap());
        let values = grid
            .points()
            .iter()
            .map(|p| {
                centers
                    .iter()
                    .map(|(c, h)| h * (-(p.distance(*c) / 0.004).powi(2)).exp())
                    .sum()
            })
            .collect();
        ImagingMap::new(grid, 0.0, values).unwrap()
    }

    #[test]
    fn zero_map_has_no_peaks() {
        let map = bumps(&[]);
        assert!(extract_peaks(&map, 0.5, 0.01).unwrap().is_empty());
    }

    #[test]
    fn finds_separate_bumps_above_threshold() {
        let a = Point2::new(0.02, 0.01);
        let b = Point2::new(-0.02, -0.01);
        let c = Point2::new(0.0, 0.03);
        let map = bumps(&[(a, 1.0), (b, 0.8), (c, 0.3)]);
        let peaks = extract_peaks(&map, 0.5, 0.01).unwrap();
        assert_eq!(peaks.len(), 2);
        assert!(peaks[0].position.distance(a) < 1e-9);
        assert!(peaks[1].position.distance(b) < 1e-9);
        assert_eq!(extract_peaks(&map, 0.2, 0.01).unwrap().len(), 3);
    }

    #[test]
    fn close_peaks_are_suppressed_by_min_sep() {
        let a = Point2::new(0.0, 0.0);
        let b = Point2::new(0.02, 0.0);
        let map = bumps(&[(a, 1.0), (b, 0.9)]);
        assert_eq!(extract_peaks(&map, 0.5, 0.01).unwrap().len(), 2);
        let one = extract_peaks(&map, 0.5, 0.03).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0].position.distance(a) < 1e-9);
    }

    #[test]
    fn plateau_keeps_the_first_point() {
        let grid = Arc::new(build_disk_grid(0.01, 0.002).unwrap());
        let values = vec![1.0; grid.len()];
        let map = ImagingMap::new(grid, 0.0, values).unwrap();
        let peaks = extract_peaks(&map, 1.0, 0.05).unwrap();
        assert_eq!(peaks.len(), 1);
        assert_eq!(peaks[0].index, 0);
    }

    #[test]
    fn bad_threshold_is_rejected() {
        let map = bumps(&[]);
        assert!(extract_peaks(&map, 0.0, 0.01).is_err());
        assert!(extract_peaks(&map, 1.5, 0.01).is_err());
    }
}

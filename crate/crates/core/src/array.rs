//! Antenna ring, imaging grid and the far-field admissibility check.

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::point::Point2;
use crate::wavecore::Wavenumber;

/// Minimum `|k|·|a_n − r|` over the grid for the far-field structure to hold.
pub const FAR_CONDITION_THRESHOLD: f64 = 0.25;

/// Antennas on a circle of radius `R`, angles strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct AntennaArray {
    positions: Vec<Point2>,
    angles: Vec<f64>,
    radius_m: f64,
}

impl AntennaArray {
    /// Arbitrary angles on the ring; used for non-uniform arrays.
    pub fn from_angles(radius_m: f64, angles: Vec<f64>) -> Result<Self> {
        if angles.len() < 2 {
            return Err(Error::Config(format!(
                "need at least 2 antennas, got {}",
                angles.len()
            )));
        }
        if !(radius_m > 0.0) || !radius_m.is_finite() {
            return Err(Error::Config(format!(
                "array radius {radius_m} must be positive"
            )));
        }
        let angles: Vec<f64> = angles.into_iter().map(|a| a.rem_euclid(TAU)).collect();
        if angles.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Config(
                "antenna angles must be strictly increasing in [0, 2π)".into(),
            ));
        }
        let positions = angles
            .iter()
            .map(|&a| Point2::from_polar(radius_m, a))
            .collect();
        Ok(Self {
            positions,
            angles,
            radius_m,
        })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Point2] {
        &self.positions
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn radius(&self) -> f64 {
        self.radius_m
    }

    /// Unit vector `θ_n = a_n / R`.
    pub fn direction(&self, n: usize) -> Point2 {
        Point2::from_polar(1.0, self.angles[n])
    }
}

/// `N` antennas at `θ_n = offset + 2π(n−1)/N`.
pub fn uniform_circular_array(n_antennas: usize, radius_m: f64) -> Result<AntennaArray> {
    uniform_circular_array_with_offset(n_antennas, radius_m, 0.0)
}

pub fn uniform_circular_array_with_offset(
    n_antennas: usize,
    radius_m: f64,
    offset_rad: f64,
) -> Result<AntennaArray> {
    if n_antennas < 2 {
        return Err(Error::Config(format!(
            "need at least 2 antennas, got {n_antennas}"
        )));
    }
    if !offset_rad.is_finite() {
        return Err(Error::Config("angle offset must be finite".into()));
    }
    let offset = offset_rad.rem_euclid(TAU / n_antennas as f64);
    let angles = (0..n_antennas)
        .map(|n| offset + TAU * n as f64 / n_antennas as f64)
        .collect();
    AntennaArray::from_angles(radius_m, angles)
}

/// Square lattice of spacing `step` clipped to the ROI disk.
///
/// Points are ordered row-major: `y` ascending, then `x` ascending. Each point
/// remembers its lattice indices so raster exports can be rebuilt.
#[derive(Debug, Clone, PartialEq)]
pub struct ImagingGrid {
    roi_radius_m: f64,
    step_m: f64,
    half_extent: i64,
    points: Vec<Point2>,
    cells: Vec<(i64, i64)>,
}

impl ImagingGrid {
    pub fn roi_radius(&self) -> f64 {
        self.roi_radius_m
    }

    pub fn step(&self) -> f64 {
        self.step_m
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Lattice indices `(ix, iy)` of each point, in grid order.
    pub fn cells(&self) -> &[(i64, i64)] {
        &self.cells
    }

    /// Lattice indices run over `-half_extent ..= half_extent` on both axes.
    pub fn half_extent(&self) -> i64 {
        self.half_extent
    }

    /// Width (= height) of the bounding box in lattice cells.
    pub fn side(&self) -> usize {
        (2 * self.half_extent + 1) as usize
    }

    /// Index of the point at lattice cell `(ix, iy)`, if it lies in the disk.
    pub fn index_of(&self, ix: i64, iy: i64) -> Option<usize> {
        let h = self.half_extent;
        if ix.abs() > h || iy.abs() > h {
            return None;
        }
        // rows are contiguous; binary search within the row
        self.cells
            .binary_search_by(|&(cx, cy)| cy.cmp(&iy).then(cx.cmp(&ix)))
            .ok()
    }

    /// Index of the grid point closest to `p`.
    pub fn nearest(&self, p: Point2) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (i, q) in self.points.iter().enumerate() {
            let d = q.distance(p);
            if d < best_d {
                best_d = d;
                best = i;
            }
        }
        best
    }
}

/// Builds the ROI grid. Points on the boundary circle are kept up to a
/// relative rounding slack of `1e-12`.
pub fn build_disk_grid(roi_radius_m: f64, step_m: f64) -> Result<ImagingGrid> {
    if !(step_m > 0.0) || !step_m.is_finite() {
        return Err(Error::Config(format!(
            "grid step {step_m} must be positive"
        )));
    }
    if !(roi_radius_m > 0.0) || !roi_radius_m.is_finite() {
        return Err(Error::Config(format!(
            "ROI radius {roi_radius_m} must be positive"
        )));
    }
    if step_m > roi_radius_m {
        return Err(Error::Config("grid step exceeds the ROI radius".into()));
    }
    let ratio = roi_radius_m / step_m;
    let half_extent = (ratio * (1.0 + 1e-12)).floor() as i64;
    let limit_sq = ratio * ratio * (1.0 + 2e-12);
    let mut points = Vec::new();
    let mut cells = Vec::new();
    for iy in -half_extent..=half_extent {
        for ix in -half_extent..=half_extent {
            if ((ix * ix + iy * iy) as f64) <= limit_sq {
                points.push(Point2::new(ix as f64 * step_m, iy as f64 * step_m));
                cells.push((ix, iy));
            }
        }
    }
    Ok(ImagingGrid {
        roi_radius_m,
        step_m,
        half_extent,
        points,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarConditionReport {
    pub min_value: f64,
    pub pass: bool,
}

/// `min_{n, r} |k|·|a_n − r|` against [`FAR_CONDITION_THRESHOLD`].
pub fn validate_far_condition(
    array: &AntennaArray,
    grid: &ImagingGrid,
    k: Wavenumber,
) -> FarConditionReport {
    let min_dist = array
        .positions()
        .iter()
        .flat_map(|a| grid.points().iter().map(move |r| a.distance(*r)))
        .fold(f64::INFINITY, f64::min);
    let min_value = k.norm() * min_dist;
    FarConditionReport {
        min_value,
        pass: min_value >= FAR_CONDITION_THRESHOLD,
    }
}

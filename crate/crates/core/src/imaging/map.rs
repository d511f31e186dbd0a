use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use super::steering::{contract, steering_vector, QuadraticForm, SteeringMode};
use crate::array::{AntennaArray, ImagingGrid};
use crate::error::{Error, Result};
use crate::forward::ScatteringFrame;
use crate::point::Point2;
use crate::wavecore::Wavenumber;

/// Unnormalised map values in grid order.
#[derive(Debug, Clone, PartialEq)]
pub struct ImagingMap {
    grid: Arc<ImagingGrid>,
    time_s: f64,
    values: Vec<f64>,
}

impl ImagingMap {
    pub fn new(grid: Arc<ImagingGrid>, time_s: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Shape {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self {
            grid,
            time_s,
            values,
        })
    }

    pub fn grid(&self) -> &ImagingGrid {
        &self.grid
    }

    pub fn grid_arc(&self) -> &Arc<ImagingGrid> {
        &self.grid
    }

    pub fn time(&self) -> f64 {
        self.time_s
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Index, location and value of the largest entry; the first in grid
    /// order wins ties.
    pub fn argmax(&self) -> (usize, Point2, f64) {
        let mut best = 0;
        for (i, &v) in self.values.iter().enumerate() {
            if v > self.values[best] {
                best = i;
            }
        }
        (best, self.grid.points()[best], self.values[best])
    }

    /// Values divided by the maximum; an all-zero map stays zero.
    pub fn normalized(&self) -> Vec<f64> {
        let max = self.max_value();
        if max > 0.0 {
            self.values.iter().map(|v| v / max).collect()
        } else {
            vec![0.0; self.values.len()]
        }
    }
}

/// Precomputed steering data for one array, background and grid.
pub struct Imager {
    grid: Arc<ImagingGrid>,
    n: usize,
    form: QuadraticForm,
    mode: SteeringMode,
    /// Conjugated steering vectors, one row of `n` per grid point.
    left: Vec<Complex64>,
    /// Right-hand vectors; equal to `left` for the bilinear form.
    right: Option<Vec<Complex64>>,
}

impl Imager {
    pub fn new(
        array: &AntennaArray,
        k: Wavenumber,
        grid: Arc<ImagingGrid>,
        mode: SteeringMode,
        form: QuadraticForm,
    ) -> Result<Self> {
        let n = array.len();
        let vectors = grid
            .points()
            .par_iter()
            .map(|&r| steering_vector(array, k, r, mode))
            .collect::<Result<Vec<_>>>()?;
        let mut left = Vec::with_capacity(n * grid.len());
        let mut right = match form {
            QuadraticForm::Bilinear => None,
            QuadraticForm::Sesquilinear => Some(Vec::with_capacity(n * grid.len())),
        };
        for f in &vectors {
            left.extend(f.entries().iter().map(|v| v.conj()));
            if let Some(r) = right.as_mut() {
                r.extend_from_slice(f.entries());
            }
        }
        Ok(Self {
            grid,
            n,
            form,
            mode,
            left,
            right,
        })
    }

    pub fn grid(&self) -> &Arc<ImagingGrid> {
        &self.grid
    }

    pub fn n_antennas(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> SteeringMode {
        self.mode
    }

    pub fn form(&self) -> QuadraticForm {
        self.form
    }

    fn check(&self, frame: &ScatteringFrame) -> Result<()> {
        if frame.dim() != self.n {
            return Err(Error::Shape {
                expected: self.n,
                got: frame.dim(),
            });
        }
        Ok(())
    }

    fn value_at(&self, frame: &ScatteringFrame, i: usize) -> f64 {
        let n = self.n;
        let l = &self.left[i * n..(i + 1) * n];
        let r = self.right.as_ref().map_or(l, |r| &r[i * n..(i + 1) * n]);
        contract(frame.entries(), n, l, r, false).norm()
    }

    /// Map of one frame, parallel over grid points.
    pub fn map(&self, frame: &ScatteringFrame) -> Result<ImagingMap> {
        self.check(frame)?;
        let values = (0..self.grid.len())
            .into_par_iter()
            .map(|i| self.value_at(frame, i))
            .collect();
        ImagingMap::new(self.grid.clone(), frame.time(), values)
    }

    /// Same result as [`Imager::map`] on the calling thread only.
    pub fn map_serial(&self, frame: &ScatteringFrame) -> Result<ImagingMap> {
        self.check(frame)?;
        let values = (0..self.grid.len())
            .map(|i| self.value_at(frame, i))
            .collect();
        ImagingMap::new(self.grid.clone(), frame.time(), values)
    }

    pub fn map_all(&self, frames: &[ScatteringFrame]) -> Result<Vec<ImagingMap>> {
        frames.iter().map(|f| self.map(f)).collect()
    }
}

/// One-shot map; prefer [`Imager`] when imaging several frames.
pub fn imaging_map(
    frame: &ScatteringFrame,
    array: &AntennaArray,
    k: Wavenumber,
    grid: Arc<ImagingGrid>,
    mode: SteeringMode,
) -> Result<ImagingMap> {
    Imager::new(array, k, grid, mode, QuadraticForm::Bilinear)?.map(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::{build_disk_grid, uniform_circular_array};
    use crate::imaging::{imaging_value, quadratic_form};
    use crate::wavecore::{complex_wavenumber, BackgroundMedium};

    fn random_frame(n: usize) -> ScatteringFrame {
        let mut entries = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let s = (p * 31 + q * 17) as f64;
                entries.push(Complex64::new(s.sin(), (0.7 * s).cos()));
            }
        }
        ScatteringFrame::from_entries(0.5, n, entries, false).unwrap()
    }

    #[test]
    fn map_matches_pointwise_value_and_serial_path() {
        let arr = uniform_circular_array(8, 0.09).unwrap();
        let k = complex_wavenumber(&BackgroundMedium::reference_water()).unwrap();
        let grid = Arc::new(build_disk_grid(0.03, 0.006).unwrap());
        let frame = random_frame(8);
        for form in [QuadraticForm::Bilinear, QuadraticForm::Sesquilinear] {
            let imager = Imager::new(&arr, k, grid.clone(), SteeringMode::Exact, form).unwrap();
            let map = imager.map(&frame).unwrap();
            assert_eq!(map.values(), imager.map_serial(&frame).unwrap().values());
            assert_eq!(map.time(), 0.5);
            for (i, &r) in grid.points().iter().enumerate() {
                let f = steering_vector(&arr, k, r, SteeringMode::Exact).unwrap();
                let want = quadratic_form(&frame, &f, form, false).unwrap().norm();
                assert!((map.values()[i] - want).abs() <= 1e-14 * want.max(1.0));
                if form == QuadraticForm::Bilinear {
                    assert_eq!(want, imaging_value(&frame, &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn wrong_frame_size_is_rejected() {
        let arr = uniform_circular_array(8, 0.09).unwrap();
        let k = complex_wavenumber(&BackgroundMedium::reference_water()).unwrap();
        let grid = Arc::new(build_disk_grid(0.02, 0.01).unwrap());
        let imager = Imager::new(
            &arr,
            k,
            grid,
            SteeringMode::Farfield,
            QuadraticForm::Bilinear,
        )
        .unwrap();
        assert!(matches!(
            imager.map(&random_frame(6)),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn argmax_prefers_first_on_ties() {
        let grid = Arc::new(build_disk_grid(0.02, 0.01).unwrap());
        let mut values = vec![0.0; grid.len()];
        values[2] = 1.0;
        values[5] = 1.0;
        let map = ImagingMap::new(grid, 0.0, values).unwrap();
        assert_eq!(map.argmax().0, 2);
        assert_eq!(map.normalized()[5], 1.0);
    }
}

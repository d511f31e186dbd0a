use num_complex::Complex64;

use crate::error::{Error, Result};

/// One timestamped `N×N` scattering matrix, row-major.
///
/// With `diagonal_known == false` (the measured situation) the diagonal is
/// held at exactly zero.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringFrame {
    time_s: f64,
    n: usize,
    entries: Vec<Complex64>,
    diagonal_known: bool,
}

impl ScatteringFrame {
    pub fn zeros(time_s: f64, n: usize) -> Self {
        Self {
            time_s,
            n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
            diagonal_known: false,
        }
    }

    /// Builds a frame from row-major entries. When the diagonal is unknown it
    /// is overwritten with zeros.
    pub fn from_entries(
        time_s: f64,
        n: usize,
        entries: Vec<Complex64>,
        diagonal_known: bool,
    ) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Shape {
                expected: n * n,
                got: entries.len(),
            });
        }
        let mut frame = Self {
            time_s,
            n,
            entries,
            diagonal_known,
        };
        if !diagonal_known {
            frame.clear_diagonal();
        }
        Ok(frame)
    }

    pub fn time(&self) -> f64 {
        self.time_s
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn diagonal_known(&self) -> bool {
        self.diagonal_known
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, p: usize, q: usize) -> Complex64 {
        self.entries[p * self.n + q]
    }

    /// Sets an entry. Diagonal writes are ignored while the diagonal is
    /// unknown.
    pub fn set(&mut self, p: usize, q: usize, value: Complex64) {
        if p == q && !self.diagonal_known {
            return;
        }
        self.entries[p * self.n + q] = value;
    }

    pub fn row(&self, p: usize) -> &[Complex64] {
        &self.entries[p * self.n..(p + 1) * self.n]
    }

    /// The `𝔾` variant of this frame: same off-diagonal data, zero diagonal.
    pub fn without_diagonal(&self) -> Self {
        let mut out = self.clone();
        out.diagonal_known = false;
        out.clear_diagonal();
        out
    }

    fn clear_diagonal(&mut self) {
        for i in 0..self.n {
            self.entries[i * self.n + i] = Complex64::new(0.0, 0.0);
        }
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|v| *v *= c);
        out
    }

    pub fn frobenius_norm_sq(&self) -> f64 {
        self.entries.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for p in 0..self.n {
            for q in p + 1..self.n {
                worst = worst.max((self.get(p, q) - self.get(q, p)).norm());
            }
        }
        worst
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Complex64] {
        &mut self.entries
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_diagonal_is_forced_to_zero() {
        let e = vec![Complex64::new(1.0, 1.0); 9];
        let f = ScatteringFrame::from_entries(0.0, 3, e.clone(), false).unwrap();
        for i in 0..3 {
            assert_eq!(f.get(i, i), Complex64::new(0.0, 0.0));
        }
        let full = ScatteringFrame::from_entries(0.0, 3, e, true).unwrap();
        assert_eq!(full.get(1, 1), Complex64::new(1.0, 1.0));
        assert_eq!(full.without_diagonal(), f);
    }

    #[test]
    fn shape_checked() {
        assert!(matches!(
            ScatteringFrame::from_entries(0.0, 3, vec![Complex64::new(0.0, 0.0); 8], false),
            Err(Error::Shape {
                expected: 9,
                got: 8
            })
        ));
    }

    #[test]
    fn diagonal_writes_ignored_when_unknown() {
        let mut f = ScatteringFrame::zeros(0.0, 2);
        f.set(0, 0, Complex64::new(5.0, 0.0));
        f.set(0, 1, Complex64::new(2.0, 0.0));
        assert_eq!(f.get(0, 0), Complex64::new(0.0, 0.0));
        assert_eq!(f.get(0, 1), Complex64::new(2.0, 0.0));
        assert_eq!(f.max_asymmetry(), 2.0);
    }
}

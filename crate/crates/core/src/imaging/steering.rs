use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::array::AntennaArray;
use crate::error::{Error, Result};
use crate::forward::{incident_field, ScatteringFrame};
use crate::point::Point2;
use crate::wavecore::Wavenumber;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SteeringMode {
    /// Normalised exact incident fields `(i/4)H₀⁽¹⁾(k|a_n − r|)`.
    #[default]
    Exact,
    /// Plane-wave phases `e^{−i k̄ θ_n·r}`, normalised. For a lossless
    /// background every entry has modulus `1/√N`.
    Farfield,
}

/// Which quadratic form of the frame is imaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadraticForm {
    /// `F̄ᵀ 𝔾 F̄`.
    #[default]
    Bilinear,
    /// `F̄ᵀ 𝔾 F`, kept for comparison experiments.
    Sesquilinear,
}

/// Unit-norm steering vector.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector {
    entries: Vec<Complex64>,
    mode: SteeringMode,
}

impl SteeringVector {
    /// Normalises `raw`; a zero vector is rejected.
    pub fn from_raw(raw: Vec<Complex64>, mode: SteeringMode) -> Result<Self> {
        let norm = raw.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::Singularity(format!(
                "steering vector norm {norm} cannot be normalised"
            )));
        }
        Ok(Self {
            entries: raw.into_iter().map(|v| v / norm).collect(),
            mode,
        })
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn mode(&self) -> SteeringMode {
        self.mode
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

pub fn steering_vector(
    array: &AntennaArray,
    k: Wavenumber,
    r: Point2,
    mode: SteeringMode,
) -> Result<SteeringVector> {
    let raw = match mode {
        SteeringMode::Exact => array
            .positions()
            .iter()
            .map(|&a| incident_field(k, a, r))
            .collect::<Result<Vec<_>>>()?,
        SteeringMode::Farfield => {
            let kc = k.value().conj();
            (0..array.len())
                .map(|n| (-Complex64::i() * kc * array.direction(n).dot(r)).exp())
                .collect()
        }
    };
    SteeringVector::from_raw(raw, mode)
}

/// Complex quadratic form of the frame matrix with the steering vector,
/// optionally skipping the diagonal.
pub fn quadratic_form(
    frame: &ScatteringFrame,
    f: &SteeringVector,
    form: QuadraticForm,
    include_diagonal: bool,
) -> Result<Complex64> {
    let n = frame.dim();
    if f.len() != n {
        return Err(Error::Shape {
            expected: n,
            got: f.len(),
        });
    }
    let left: Vec<Complex64> = f.entries().iter().map(|v| v.conj()).collect();
    let right: Vec<Complex64> = match form {
        QuadraticForm::Bilinear => left.clone(),
        QuadraticForm::Sesquilinear => f.entries().to_vec(),
    };
    Ok(contract(
        frame.entries(),
        n,
        &left,
        &right,
        include_diagonal,
    ))
}

#[inline]
pub(crate) fn contract(
    m: &[Complex64],
    n: usize,
    left: &[Complex64],
    right: &[Complex64],
    include_diagonal: bool,
) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for p in 0..n {
        let row = &m[p * n..(p + 1) * n];
        let mut acc = Complex64::new(0.0, 0.0);
        for q in 0..n {
            if q != p || include_diagonal {
                acc += row[q] * right[q];
            }
        }
        total += left[p] * acc;
    }
    total
}

/// `|F̄ᵀ 𝔾 F̄|`; the frame's diagonal never contributes.
pub fn imaging_value(frame: &ScatteringFrame, f: &SteeringVector) -> Result<f64> {
    Ok(quadratic_form(frame, f, QuadraticForm::Bilinear, false)?.norm())
}

/// `|F̄ᵀ 𝕂 F̄|` on a frame whose diagonal was measured.
pub fn imaging_value_full(frame: &ScatteringFrame, f: &SteeringVector) -> Result<f64> {
    if !frame.diagonal_known() {
        return Err(Error::Config(
            "full-matrix imaging needs a frame with a known diagonal".into(),
        ));
    }
    Ok(quadratic_form(frame, f, QuadraticForm::Bilinear, true)?.norm())
}

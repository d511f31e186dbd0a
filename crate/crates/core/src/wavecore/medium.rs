use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{EPS0, MU0};
use crate::error::{Error, Result};

/// Minimum `ωε_b / σ_b` for the medium to count as low-loss.
pub const LOW_LOSS_RATIO: f64 = 10.0;

fn default_permeability() -> f64 {
    MU0
}

/// Homogeneous background filling the tank.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BackgroundMedium {
    pub frequency_hz: f64,
    /// Relative permittivity (multiples of [`EPS0`]).
    pub rel_permittivity: f64,
    pub conductivity_s_per_m: f64,
    #[serde(default = "default_permeability")]
    pub permeability_h_per_m: f64,
    /// Use the conjugate of the principal wavenumber (`Im k < 0`).
    #[serde(default)]
    pub conjugate_wavenumber: bool,
}

impl BackgroundMedium {
    pub fn new(frequency_hz: f64, rel_permittivity: f64, conductivity_s_per_m: f64) -> Self {
        Self {
            frequency_hz,
            rel_permittivity,
            conductivity_s_per_m,
            permeability_h_per_m: MU0,
            conjugate_wavenumber: false,
        }
    }

    /// Water at 925 MHz, `(78ε₀, 0.2 S/m)`.
    pub fn reference_water() -> Self {
        Self::new(925.0e6, 78.0, 0.2)
    }

    pub fn omega(&self) -> f64 {
        2.0 * PI * self.frequency_hz
    }

    /// Absolute permittivity `ε_b`, F/m.
    pub fn permittivity(&self) -> f64 {
        self.rel_permittivity * EPS0
    }

    /// `ωε_b / σ_b`; infinite for a lossless background.
    pub fn loss_ratio(&self) -> f64 {
        self.omega() * self.permittivity() / self.conductivity_s_per_m
    }

    pub fn is_low_loss(&self) -> bool {
        self.loss_ratio() >= LOW_LOSS_RATIO
    }

    /// Real lossless wavenumber squared, `k₀² = ω²ε_bμ_b`.
    pub fn lossless_wavenumber_sq(&self) -> f64 {
        let w = self.omega();
        w * w * self.permittivity() * self.permeability_h_per_m
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("frequency_hz", self.frequency_hz),
            ("rel_permittivity", self.rel_permittivity),
            ("conductivity_s_per_m", self.conductivity_s_per_m),
            ("permeability_h_per_m", self.permeability_h_per_m),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidMedium(format!("{name} is not finite")));
            }
        }
        if self.frequency_hz <= 0.0
            || self.rel_permittivity <= 0.0
            || self.permeability_h_per_m <= 0.0
        {
            return Err(Error::InvalidMedium(
                "frequency, permittivity and permeability must be positive".into(),
            ));
        }
        if self.conductivity_s_per_m < 0.0 {
            return Err(Error::InvalidMedium(
                "conductivity must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

/// Complex background wavenumber, rad/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavenumber(Complex64);

impl Wavenumber {
    /// Wraps a raw value; `Re` must be positive.
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.re > 0.0) || !value.im.is_finite() || !value.re.is_finite() {
            return Err(Error::InvalidMedium(format!(
                "wavenumber {value} must have positive real part"
            )));
        }
        Ok(Self(value))
    }

    pub fn real(value: f64) -> Result<Self> {
        Self::new(Complex64::new(value, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn norm(self) -> f64 {
        self.0.norm()
    }

    /// `λ = 2π / Re k`.
    pub fn wavelength(self) -> f64 {
        2.0 * PI / self.0.re
    }

    pub fn scaled(self, factor: f64) -> Result<Self> {
        Self::new(self.0 * factor)
    }
}

/// Principal root of `ω²μ_b(ε_b + iσ_b/ω)`, conjugated when the medium asks
/// for it.
pub fn complex_wavenumber(medium: &BackgroundMedium) -> Result<Wavenumber> {
    medium.validate()?;
    let w = medium.omega();
    let eps = Complex64::new(medium.permittivity(), medium.conductivity_s_per_m / w);
    let k = (eps * (w * w * medium.permeability_h_per_m)).sqrt();
    let k = if medium.conjugate_wavenumber {
        k.conj()
    } else {
        k
    };
    Wavenumber::new(k)
}

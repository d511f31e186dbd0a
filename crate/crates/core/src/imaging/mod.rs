//! Kirchhoff migration on zero-diagonal scattering matrices.
//!
//! For a candidate point `r` the steering vector `F(r)` is the normalised
//! vector of incident fields from every antenna, and the map value is
//! `|F̄ᵀ 𝔾 F̄|` (both sides conjugated). Steering vectors depend only on the
//! geometry, so [`Imager`] computes them once per grid and reuses them for
//! every frame.

mod export;
mod map;
mod steering;

pub use export::{map_to_pgm, read_map_csv, write_map_csv, MAP_HEADER_TAG};
pub use map::{imaging_map, Imager, ImagingMap};
pub use steering::{
    imaging_value, imaging_value_full, quadratic_form, steering_vector, QuadraticForm,
    SteeringMode, SteeringVector,
};

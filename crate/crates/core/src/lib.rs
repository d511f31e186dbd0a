//! Single-frequency imaging and tracking of small moving objects inside a
//! circular microwave array.
//!
//! The crate is organised bottom-up:
//!
//! * [`wavecore`]: background medium, complex wavenumber, Bessel and Hankel
//!   functions of complex argument.
//! * [`array`]: antenna ring and the disk-shaped imaging grid.
//! * [`forward`]: Born-approximated scattering matrices for moving disks,
//!   plus the frame CSV format.
//! * [`imaging`]: steering vectors and the zero-diagonal Kirchhoff migration
//!   map.
//! * [`oracle`]: the Bessel-series representation of the imaging function,
//!   used as an independent cross-check of [`imaging`].
//! * [`pipeline`]: scenario files, peak extraction, nearest-neighbour
//!   tracking and the end-to-end runner used by the `kirmig` binary.

// validation is written as `!(x > 0.0)` so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod array;
pub mod error;
pub mod forward;
pub mod imaging;
pub mod oracle;
pub mod pipeline;
pub mod point;
pub mod wavecore;

pub use error::{Error, Result};
pub use point::Point2;

pub use num_complex::Complex64;

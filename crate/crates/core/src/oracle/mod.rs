//! Bessel-series evaluation of the imaging function, independent of the
//! matrix engine in [`crate::imaging`].
//!
//! With far-field incident fields and plane-wave steering the map value
//! reduces to a sum of Bessel series over the scatterer support. This module
//! evaluates that series directly so the engine can be checked against it.

mod report;
mod series;
mod structure;

pub use report::{compare_maps, write_report_csv, OracleRow, REPORT_HEADER};
pub use series::{array_phase_sum, e_factor, uniform_angles};
pub use structure::{
    certified_truncation, on_target_magnitude, path_loss_factor, structure_limit_value,
    structure_map, structure_value, StructureParams,
};

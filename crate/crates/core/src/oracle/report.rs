use std::io::Write;

use crate::array::ImagingGrid;
use crate::error::{Error, Result};
use crate::forward::fmt_real;
use crate::point::Point2;

pub const REPORT_HEADER: &str = "x,y,engine_value,oracle_value,rel_err";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleRow {
    pub point: Point2,
    pub engine_value: f64,
    pub oracle_value: f64,
    pub rel_err: f64,
}

/// Pairs engine and oracle values point by point; the relative error is
/// taken against the oracle.
pub fn compare_maps(grid: &ImagingGrid, engine: &[f64], oracle: &[f64]) -> Result<Vec<OracleRow>> {
    for got in [engine.len(), oracle.len()] {
        if got != grid.len() {
            return Err(Error::Shape {
                expected: grid.len(),
                got,
            });
        }
    }
    Ok(grid
        .points()
        .iter()
        .zip(engine.iter().zip(oracle))
        .map(|(&point, (&e, &o))| {
            let diff = (e - o).abs();
            let rel_err = if diff == 0.0 { 0.0 } else { diff / o.abs() };
            OracleRow {
                point,
                engine_value: e,
                oracle_value: o,
                rel_err,
            }
        })
        .collect())
}

/// Writes the comparison; each note becomes a leading `# ` comment line.
pub fn write_report_csv<W: Write>(mut out: W, rows: &[OracleRow], notes: &[String]) -> Result<()> {
    for note in notes {
        writeln!(out, "# {note}")?;
    }
    writeln!(out, "{REPORT_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_real(r.point.x),
            fmt_real(r.point.y),
            fmt_real(r.engine_value),
            fmt_real(r.oracle_value),
            fmt_real(r.rel_err)
        )?;
    }
    out.flush()?;
    Ok(())
}

//! Heatmap export: a `# map v1, t=<t>` CSV of `x,y,value` rows in grid order,
//! and binary PGM images.

use std::io::{BufRead, Write};
use std::sync::Arc;

use super::map::ImagingMap;
use crate::array::ImagingGrid;
use crate::error::{Error, Result};
use crate::forward::fmt_real;

pub const MAP_HEADER_TAG: &str = "# map v1, t=";

/// Writes the map; with `normalize` the values are divided by the maximum.
pub fn write_map_csv<W: Write>(mut out: W, map: &ImagingMap, normalize: bool) -> Result<()> {
    writeln!(out, "{MAP_HEADER_TAG}{}", fmt_real(map.time()))?;
    writeln!(out, "x,y,value")?;
    let values = if normalize {
        map.normalized()
    } else {
        map.values().to_vec()
    };
    for (p, v) in map.grid().points().iter().zip(values) {
        writeln!(out, "{},{},{}", fmt_real(p.x), fmt_real(p.y), fmt_real(v))?;
    }
    out.flush()?;
    Ok(())
}

/// Reads a map written for `grid`; points must appear in grid order.
pub fn read_map_csv<R: BufRead>(input: R, grid: Arc<ImagingGrid>) -> Result<ImagingMap> {
    let mut time = None;
    let mut values = Vec::with_capacity(grid.len());
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let t = line.trim();
        let err = |msg: String| Error::Parse { line: line_no, msg };
        if time.is_none() {
            let rest = t
                .strip_prefix(MAP_HEADER_TAG)
                .ok_or_else(|| err(format!("expected header starting with '{MAP_HEADER_TAG}'")))?;
            time = Some(
                rest.trim()
                    .parse::<f64>()
                    .map_err(|e| err(format!("bad time: {e}")))?,
            );
            continue;
        }
        if t.is_empty() || t.starts_with('#') || t == "x,y,value" {
            continue;
        }
        let fields: Vec<f64> = t
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| err(format!("bad number: {e}")))?;
        if fields.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", fields.len())));
        }
        let idx = values.len();
        let Some(p) = grid.points().get(idx) else {
            return Err(err("more rows than grid points".into()));
        };
        if (p.x - fields[0]).abs() > 1e-9 || (p.y - fields[1]).abs() > 1e-9 {
            return Err(err(format!("row does not match grid point {idx}")));
        }
        values.push(fields[2]);
    }
    let time = time.ok_or(Error::Parse {
        line: 1,
        msg: "missing header".into(),
    })?;
    ImagingMap::new(grid, time, values)
}

/// Binary PGM (P5) of the map, min-max normalised to 0..255. North is up;
/// pixels outside the disk are 0.
pub fn map_to_pgm(map: &ImagingMap) -> Vec<u8> {
    let grid = map.grid();
    let side = grid.side();
    let h = grid.half_extent();
    let (lo, hi) = map
        .values()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let span = hi - lo;
    let mut pixels = vec![0u8; side * side];
    for (&(ix, iy), &v) in grid.cells().iter().zip(map.values()) {
        let col = (ix + h) as usize;
        let row = (h - iy) as usize;
        let level = if span > 0.0 {
            (255.0 * (v - lo) / span).round()
        } else {
            0.0
        };
        pixels[row * side + col] = level.clamp(0.0, 255.0) as u8;
    }
    let mut out = format!("P5\n{side} {side}\n255\n").into_bytes();
    out.extend_from_slice(&pixels);
    out
}

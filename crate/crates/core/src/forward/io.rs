//! Frame CSV: a `# frames v1, N=<N>` header, then one `t,p,q,re,im` row per
//! off-diagonal entry. Antenna indices are 1-based; reals are written with
//! 17 significant digits so a write/read/write cycle is byte-identical.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::frame::ScatteringFrame;
use crate::error::{Error, Result};

pub const FRAMES_HEADER_TAG: &str = "# frames v1, N=";

pub(crate) fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_frames<W: Write>(mut out: W, frames: &[ScatteringFrame]) -> Result<()> {
    let n = frames.first().map_or(0, |f| f.dim());
    writeln!(out, "{FRAMES_HEADER_TAG}{n}")?;
    for frame in frames {
        if frame.dim() != n {
            return Err(Error::Shape {
                expected: n,
                got: frame.dim(),
            });
        }
        let t = fmt_real(frame.time());
        for p in 0..n {
            for q in 0..n {
                if p == q {
                    continue;
                }
                let v = frame.get(p, q);
                writeln!(
                    out,
                    "{t},{},{},{},{}",
                    p + 1,
                    q + 1,
                    fmt_real(v.re),
                    fmt_real(v.im)
                )?;
            }
        }
    }
    out.flush()?;
    Ok(())
}

/// Reads frames written by [`write_frames`] or by external tools.
///
/// Rows for one time must be contiguous and times must increase. Entries
/// that are absent read as zero; no symmetry is assumed.
pub fn read_frames<R: BufRead>(input: R) -> Result<Vec<ScatteringFrame>> {
    let mut lines = input.lines().enumerate();
    let n = loop {
        let Some((i, line)) = lines.next() else {
            return Err(Error::Parse {
                line: 1,
                msg: "missing header".into(),
            });
        };
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rest = line
            .trim()
            .strip_prefix(FRAMES_HEADER_TAG)
            .ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected header starting with '{FRAMES_HEADER_TAG}'"),
            })?;
        break rest.trim().parse::<usize>().map_err(|e| Error::Parse {
            line: i + 1,
            msg: format!("bad antenna count: {e}"),
        })?;
    };

    let mut frames: Vec<ScatteringFrame> = Vec::new();
    let mut seen: Vec<bool> = Vec::new();
    for (i, line) in lines {
        let line = line?;
        let line_no = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        if fields.len() != 5 {
            return Err(err(format!("expected 5 fields, found {}", fields.len())));
        }
        let real = |s: &str| {
            s.parse::<f64>()
                .map_err(|e| err(format!("bad number '{s}': {e}")))
        };
        let index = |s: &str| -> Result<usize> {
            let v = s
                .parse::<usize>()
                .map_err(|e| err(format!("bad index '{s}': {e}")))?;
            if v == 0 || v > n {
                return Err(err(format!("antenna index {v} outside 1..={n}")));
            }
            Ok(v - 1)
        };
        let t = real(fields[0])?;
        let (p, q) = (index(fields[1])?, index(fields[2])?);
        let value = Complex64::new(real(fields[3])?, real(fields[4])?);
        if !t.is_finite() || !value.re.is_finite() || !value.im.is_finite() {
            return Err(err("non-finite value".into()));
        }
        if p == q {
            return Err(err(format!(
                "diagonal entry ({}, {}) is not part of the format",
                p + 1,
                q + 1
            )));
        }

        let start_new = match frames.last() {
            None => true,
            Some(f) if f.time() == t => false,
            Some(f) if t > f.time() => true,
            Some(f) => {
                return Err(err(format!(
                    "time {t} after {}: frames must be in increasing time",
                    f.time()
                )))
            }
        };
        if start_new {
            frames.push(ScatteringFrame::zeros(t, n));
            seen = vec![false; n * n];
        }
        if std::mem::replace(&mut seen[p * n + q], true) {
            return Err(err(format!(
                "duplicate entry ({}, {}) at t = {t}",
                p + 1,
                q + 1
            )));
        }
        frames
            .last_mut()
            .expect("frame pushed above")
            .set(p, q, value);
    }
    Ok(frames)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<ScatteringFrame> {
        (0..3)
            .map(|k| {
                let entries = (0..16)
                    .map(|i| {
                        Complex64::new(
                            (i as f64 + 0.1) / 3.0 * (k + 1) as f64,
                            -1e-9 * i as f64 / 7.0,
                        )
                    })
                    .collect();
                ScatteringFrame::from_entries(0.5 * k as f64, 4, entries, false).unwrap()
            })
            .collect()
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let mut a = Vec::new();
        write_frames(&mut a, &sample()).unwrap();
        let back = read_frames(a.as_slice()).unwrap();
        assert_eq!(back, sample());
        let mut b = Vec::new();
        write_frames(&mut b, &back).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("# frames v1, N=4\n"));
        assert_eq!(text.lines().count(), 1 + 3 * 12);
    }

    #[test]
    fn accepts_asymmetric_and_sparse_input() {
        let text = "# frames v1, N=3\n0,1,2,1.5,0\n0,2,1,-2,1\n1.0,3,1,0,4\n";
        let frames = read_frames(text.as_bytes()).unwrap();
        assert_eq!(frames.len(), 2);
        assert_eq!(frames[0].get(0, 1), Complex64::new(1.5, 0.0));
        assert_eq!(frames[0].get(1, 0), Complex64::new(-2.0, 1.0));
        assert_eq!(frames[0].get(2, 0), Complex64::new(0.0, 0.0));
        assert_eq!(frames[1].get(2, 0), Complex64::new(0.0, 4.0));
    }

    #[test]
    fn rejects_malformed_input() {
        let bad = [
            "0,1,2,1,0\n",
            "# frames v1, N=3\n0,1,1,1,0\n",
            "# frames v1, N=3\n0,1,4,1,0\n",
            "# frames v1, N=3\n0,1,2,1\n",
            "# frames v1, N=3\n1,1,2,1,0\n0,1,2,1,0\n",
            "# frames v1, N=3\n0,1,2,1,0\n0,1,2,1,0\n",
            "# frames v1, N=3\n0,1,2,x,0\n",
        ];
        for text in bad {
            assert!(
                matches!(read_frames(text.as_bytes()), Err(Error::Parse { .. })),
                "{text:?}"
            );
        }
    }
}

//! C ABI over `kirmig`.
//!
//! Objects cross the boundary as opaque heap handles created by `km_*_new` /
//! `km_*_from_*` functions and released with the matching `km_*_free`.
//! Fallible functions return a [`KmStatus`]; the message for the last failure
//! on the calling thread is available from [`km_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kirmig::forward::{read_frames, write_frames, ScatteringFrame};
use kirmig::imaging::Imager;
use kirmig::pipeline::{imager_for, run_tracking_on_frames, simulate, write_tracks_csv, Scenario};
use kirmig::wavecore::{bessel_j, complex_wavenumber, BackgroundMedium};
use kirmig::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmStatus {
    Ok = 0,
    NullPointer = 1,
    Config = 2,
    Numeric = 3,
    Shape = 4,
    Io = 5,
    Panic = 6,
}

pub struct KmScenario {
    inner: Scenario,
}

pub struct KmFrameSet {
    frames: Vec<ScatteringFrame>,
}

pub struct KmImager {
    inner: Imager,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> KmStatus {
    match err {
        Error::Shape { .. } => KmStatus::Shape,
        Error::Io(_) | Error::Parse { .. } | Error::Json(_) => KmStatus::Io,
        e if e.exit_code() == 3 => KmStatus::Numeric,
        _ => KmStatus::Config,
    }
}

fn guard<F: FnOnce() -> Result<(), (KmStatus, String)>>(f: F) -> KmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KmStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside kirmig");
            KmStatus::Panic
        }
    }
}

trait IntoFfi<T> {
    fn ffi(self) -> Result<T, (KmStatus, String)>;
}

impl<T> IntoFfi<T> for kirmig::Result<T> {
    fn ffi(self) -> Result<T, (KmStatus, String)> {
        self.map_err(|e| (status_of(&e), e.to_string()))
    }
}

fn null(what: &str) -> (KmStatus, String) {
    (KmStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, (KmStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, (KmStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (KmStatus::Io, format!("{what} is not UTF-8: {e}")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (KmStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, (KmStatus, String)> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| (KmStatus::Io, e.to_string()))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length including the NUL,
/// or 0 when there is no error.
///
/// # Safety
/// `buf` must be valid for `len` bytes or null.
#[no_mangle]
pub unsafe extern "C" fn km_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let Some(msg) = e.as_ref() else { return 0 };
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len);
            ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n - 1) = 0;
        }
        bytes.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn km_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses and validates a scenario JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_scenario_from_json(
    json: *const c_char,
    out: *mut *mut KmScenario,
) -> KmStatus {
    guard(|| {
        let inner = Scenario::from_json_str(text(json, "json")?).ffi()?;
        write_out(out, Box::into_raw(Box::new(KmScenario { inner })), "out")
    })
}

/// # Safety
/// `scenario` must come from [`km_scenario_from_json`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn km_scenario_free(scenario: *mut KmScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Synthesises the scenario's frames.
///
/// # Safety
/// Pointers must be valid handles / writable.
#[no_mangle]
pub unsafe extern "C" fn km_simulate(
    scenario: *const KmScenario,
    out: *mut *mut KmFrameSet,
) -> KmStatus {
    guard(|| {
        let s = borrow(scenario, "scenario")?;
        let frames = simulate(&s.inner).ffi()?;
        write_out(out, Box::into_raw(Box::new(KmFrameSet { frames })), "out")
    })
}

/// Parses frames from frame-CSV text.
///
/// # Safety
/// `csv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_frameset_from_csv(
    csv: *const c_char,
    out: *mut *mut KmFrameSet,
) -> KmStatus {
    guard(|| {
        let frames = read_frames(text(csv, "csv")?.as_bytes()).ffi()?;
        write_out(out, Box::into_raw(Box::new(KmFrameSet { frames })), "out")
    })
}

/// Serialises frames to frame-CSV text; release it with [`km_string_free`].
///
/// # Safety
/// `frames` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_frameset_to_csv(
    frames: *const KmFrameSet,
    out: *mut *mut c_char,
) -> KmStatus {
    guard(|| {
        let f = borrow(frames, "frames")?;
        let mut buf = Vec::new();
        write_frames(&mut buf, &f.frames).ffi()?;
        let s = String::from_utf8(buf).map_err(|e| (KmStatus::Io, e.to_string()))?;
        write_out(out, into_c_string(s)?, "out")
    })
}

/// # Safety
/// `frames` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn km_frameset_len(frames: *const KmFrameSet) -> usize {
    frames.as_ref().map_or(0, |f| f.frames.len())
}

/// Antenna count of the first frame, 0 when empty.
///
/// # Safety
/// `frames` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn km_frameset_n_antennas(frames: *const KmFrameSet) -> usize {
    frames
        .as_ref()
        .and_then(|f| f.frames.first())
        .map_or(0, |f| f.dim())
}

fn frame_at(f: &KmFrameSet, index: usize) -> Result<&ScatteringFrame, (KmStatus, String)> {
    f.frames.get(index).ok_or_else(|| {
        (
            KmStatus::Shape,
            format!("frame {index} out of range ({} frames)", f.frames.len()),
        )
    })
}

/// # Safety
/// `frames` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_frameset_time(
    frames: *const KmFrameSet,
    index: usize,
    out: *mut f64,
) -> KmStatus {
    guard(|| {
        let frame = frame_at(borrow(frames, "frames")?, index)?;
        write_out(out, frame.time(), "out")
    })
}

/// Entry `(p, q)` (0-based) of one frame.
///
/// # Safety
/// `frames` must be a valid handle; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_frameset_entry(
    frames: *const KmFrameSet,
    index: usize,
    p: usize,
    q: usize,
    re: *mut f64,
    im: *mut f64,
) -> KmStatus {
    guard(|| {
        let frame = frame_at(borrow(frames, "frames")?, index)?;
        let n = frame.dim();
        if p >= n || q >= n {
            return Err((
                KmStatus::Shape,
                format!("entry ({p}, {q}) outside a {n}x{n} frame"),
            ));
        }
        let v = frame.get(p, q);
        write_out(re, v.re, "re")?;
        write_out(im, v.im, "im")
    })
}

/// # Safety
/// `frames` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn km_frameset_free(frames: *mut KmFrameSet) {
    if !frames.is_null() {
        drop(Box::from_raw(frames));
    }
}

/// Precomputes steering vectors for the scenario's array and grid.
///
/// # Safety
/// `scenario` must be a valid handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_imager_new(
    scenario: *const KmScenario,
    out: *mut *mut KmImager,
) -> KmStatus {
    guard(|| {
        let s = borrow(scenario, "scenario")?;
        let inner = imager_for(&s.inner).ffi()?;
        write_out(out, Box::into_raw(Box::new(KmImager { inner })), "out")
    })
}

/// # Safety
/// `imager` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn km_imager_grid_len(imager: *const KmImager) -> usize {
    imager.as_ref().map_or(0, |i| i.inner.grid().len())
}

/// # Safety
/// `imager` must be a valid handle; `x` and `y` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_imager_grid_point(
    imager: *const KmImager,
    index: usize,
    x: *mut f64,
    y: *mut f64,
) -> KmStatus {
    guard(|| {
        let i = borrow(imager, "imager")?;
        let p = i
            .inner
            .grid()
            .points()
            .get(index)
            .copied()
            .ok_or_else(|| (KmStatus::Shape, format!("grid point {index} out of range")))?;
        write_out(x, p.x, "x")?;
        write_out(y, p.y, "y")
    })
}

/// Writes the unnormalised map of frame `index` into `values`, which must
/// hold exactly [`km_imager_grid_len`] doubles.
///
/// # Safety
/// Handles must be valid; `values` must be writable for `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn km_imager_map(
    imager: *const KmImager,
    frames: *const KmFrameSet,
    index: usize,
    values: *mut f64,
    len: usize,
) -> KmStatus {
    guard(|| {
        let i = borrow(imager, "imager")?;
        let frame = frame_at(borrow(frames, "frames")?, index)?;
        if values.is_null() {
            return Err(null("values"));
        }
        let map = i.inner.map(frame).ffi()?;
        if len != map.values().len() {
            return Err((
                KmStatus::Shape,
                format!("buffer holds {len} values, map has {}", map.values().len()),
            ));
        }
        ptr::copy_nonoverlapping(map.values().as_ptr(), values, len);
        Ok(())
    })
}

/// # Safety
/// `imager` must come from [`km_imager_new`] and not be used again.
#[no_mangle]
pub unsafe extern "C" fn km_imager_free(imager: *mut KmImager) {
    if !imager.is_null() {
        drop(Box::from_raw(imager));
    }
}

/// Tracks the scenario's objects through `frames` and returns the tracks CSV;
/// release it with [`km_string_free`].
///
/// # Safety
/// Handles must be valid; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_track_csv(
    scenario: *const KmScenario,
    frames: *const KmFrameSet,
    out: *mut *mut c_char,
) -> KmStatus {
    guard(|| {
        let s = borrow(scenario, "scenario")?;
        let f = borrow(frames, "frames")?;
        let run = run_tracking_on_frames(&s.inner, &f.frames).ffi()?;
        let mut buf = Vec::new();
        write_tracks_csv(&mut buf, &run.tracks).ffi()?;
        let text = String::from_utf8(buf).map_err(|e| (KmStatus::Io, e.to_string()))?;
        write_out(out, into_c_string(text)?, "out")
    })
}

/// # Safety
/// `s` must come from this library and not be used again.
#[no_mangle]
pub unsafe extern "C" fn km_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Background wavenumber for `(f, ε_r, σ)` with free-space permeability.
///
/// # Safety
/// `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_wavenumber(
    frequency_hz: f64,
    rel_permittivity: f64,
    conductivity_s_per_m: f64,
    re: *mut f64,
    im: *mut f64,
) -> KmStatus {
    guard(|| {
        let medium = BackgroundMedium::new(frequency_hz, rel_permittivity, conductivity_s_per_m);
        let k = complex_wavenumber(&medium).ffi()?.value();
        write_out(re, k.re, "re")?;
        write_out(im, k.im, "im")
    })
}

/// Bessel function of the first kind `J_order(z)`.
///
/// # Safety
/// `out_re` and `out_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn km_bessel_j(
    order: i32,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> KmStatus {
    guard(|| {
        let v = bessel_j(order, Complex64::new(re, im)).ffi()?;
        write_out(out_re, v.re, "out_re")?;
        write_out(out_im, v.im, "out_im")
    })
}

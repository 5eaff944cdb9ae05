//! C ABI over `bcpp`.
//!
//! Instances and packings are opaque handles owned by the caller and released
//! with the matching `*_free`. Every fallible call returns a [`BcppStatus`];
//! on failure [`bcpp_last_error`] describes the error on the calling thread.
//! Strings returned through out-parameters are released with
//! [`bcpp_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use bcpp::{bench, blp, evaluate, solve_exact, Algorithm, Error, Height, Instance, Packing};

/// Status code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcppStatus {
    Ok = 0,
    NullPointer = 1,
    /// Malformed JSON, heights outside `(0, 1]`, empty instance, bad UTF-8.
    InvalidInput = 2,
    /// The algorithm needs two-bar charts.
    ShapeMismatch = 3,
    /// A packing overloads some cell or does not match the instance.
    Infeasible = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BcppAlgorithm {
    A = 0,
    ALo = 1,
    A1 = 2,
    A1Lo = 3,
    Ga = 4,
    GaLo = 5,
    G = 6,
    Ffd = 7,
}

impl From<BcppAlgorithm> for Algorithm {
    fn from(a: BcppAlgorithm) -> Self {
        match a {
            BcppAlgorithm::A => Algorithm::A,
            BcppAlgorithm::ALo => Algorithm::ALo,
            BcppAlgorithm::A1 => Algorithm::A1,
            BcppAlgorithm::A1Lo => Algorithm::A1Lo,
            BcppAlgorithm::Ga => Algorithm::Ga,
            BcppAlgorithm::GaLo => Algorithm::GaLo,
            BcppAlgorithm::G => Algorithm::G,
            BcppAlgorithm::Ffd => Algorithm::Ffd,
        }
    }
}

/// Opaque instance handle.
pub struct BcppInstance {
    inner: Instance,
}

/// Opaque packing handle.
pub struct BcppPacking {
    inner: Packing,
}

/// Quality figures of a packing.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BcppReport {
    pub length: u32,
    pub density: f64,
    pub feasible: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> BcppStatus {
    match e {
        e if e.is_shape_mismatch() => BcppStatus::ShapeMismatch,
        Error::Infeasible { .. } | Error::PackingMismatch { .. } | Error::InvalidStartCell { .. } => {
            BcppStatus::Infeasible
        }
        _ => BcppStatus::InvalidInput,
    }
}

/// Runs `f`, recording errors and catching panics.
fn guard<F>(f: F) -> BcppStatus
where
    F: FnOnce() -> Result<(), (BcppStatus, String)>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BcppStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BcppStatus::Internal
        }
    }
}

fn lib<T>(r: bcpp::Result<T>) -> Result<T, (BcppStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (BcppStatus, String) {
    (BcppStatus::NullPointer, format!("{what} is null"))
}

unsafe fn instance_ref<'a>(p: *const BcppInstance) -> Result<&'a Instance, (BcppStatus, String)> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("instance"))
}

unsafe fn packing_ref<'a>(p: *const BcppPacking) -> Result<&'a Packing, (BcppStatus, String)> {
    p.as_ref().map(|h| &h.inner).ok_or_else(|| null("packing"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), (BcppStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (BcppStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|e| (BcppStatus::Internal, e.to_string()))?.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn bcpp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses instance JSON `{"d": .., "charts": [{"heights": [..]}, ..]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_instance_from_json(
    json: *const c_char,
    out: *mut *mut BcppInstance,
) -> BcppStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (BcppStatus::InvalidInput, e.to_string()))?;
        let inner = lib(Instance::from_json(text))?;
        put(out, BcppInstance { inner })
    })
}

/// Builds `n` two-bar charts `(first[i], second[i])` with heights in `(0, 1]`.
///
/// # Safety
/// `first` and `second` must point to `n` doubles each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_instance_new_two_bar(
    first: *const f64,
    second: *const f64,
    n: usize,
    out: *mut *mut BcppInstance,
) -> BcppStatus {
    guard(|| {
        if n > 0 && (first.is_null() || second.is_null()) {
            return Err(null("heights"));
        }
        let (a, b) = if n == 0 {
            (&[][..], &[][..])
        } else {
            (std::slice::from_raw_parts(first, n), std::slice::from_raw_parts(second, n))
        };
        let charts = a
            .iter()
            .zip(b)
            .map(|(&x, &y)| Ok(vec![Height::from_f64(x)?, Height::from_f64(y)?]))
            .collect::<bcpp::Result<Vec<_>>>();
        let inner = lib(charts.and_then(Instance::new))?;
        put(out, BcppInstance { inner })
    })
}

/// Random instance of `n` two-bar charts, identical to `bcpp generate`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_generate(n: usize, seed: u64, out: *mut *mut BcppInstance) -> BcppStatus {
    guard(|| {
        if n == 0 {
            return Err((BcppStatus::InvalidInput, "instance must contain at least one chart".into()));
        }
        put(out, BcppInstance { inner: bench::generate(n, seed) })
    })
}

/// Number of charts; 0 for a null handle.
///
/// # Safety
/// `instance` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bcpp_instance_len(instance: *const BcppInstance) -> usize {
    instance.as_ref().map_or(0, |h| h.inner.len())
}

/// # Safety
/// `instance` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bcpp_instance_free(instance: *mut BcppInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Packs with one heuristic; the packing is left-justified.
///
/// # Safety
/// `instance` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_solve(
    instance: *const BcppInstance,
    algorithm: BcppAlgorithm,
    out: *mut *mut BcppPacking,
) -> BcppStatus {
    guard(|| {
        let inst = instance_ref(instance)?;
        let inner = lib(Algorithm::from(algorithm).solve(inst))?;
        put(out, BcppPacking { inner })
    })
}

/// Branch-and-bound. `proven_optimal` (may be null) is false when the time
/// limit cut the search short; the packing is then the best found.
///
/// # Safety
/// `instance` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_solve_exact(
    instance: *const BcppInstance,
    time_limit_seconds: f64,
    out: *mut *mut BcppPacking,
    proven_optimal: *mut bool,
) -> BcppStatus {
    guard(|| {
        let inst = instance_ref(instance)?;
        if !(time_limit_seconds >= 0.0 && time_limit_seconds.is_finite()) {
            return Err((BcppStatus::InvalidInput, "time limit must be a non-negative number".into()));
        }
        let res = lib(solve_exact(inst, Duration::from_secs_f64(time_limit_seconds)))?;
        if !proven_optimal.is_null() {
            *proven_optimal = res.proven_optimal;
        }
        put(out, BcppPacking { inner: res.packing })
    })
}

/// Builds a packing from 1-based start cells, one per chart.
///
/// # Safety
/// `starts` must point to `n` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_packing_new(
    starts: *const u32,
    n: usize,
    out: *mut *mut BcppPacking,
) -> BcppStatus {
    guard(|| {
        if n > 0 && starts.is_null() {
            return Err(null("starts"));
        }
        let starts = if n == 0 { Vec::new() } else { std::slice::from_raw_parts(starts, n).to_vec() };
        let inner = lib(Packing::new(starts))?;
        put(out, BcppPacking { inner })
    })
}

/// Number of charts in the packing; 0 for a null handle.
///
/// # Safety
/// `packing` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bcpp_packing_len(packing: *const BcppPacking) -> usize {
    packing.as_ref().map_or(0, |h| h.inner.len())
}

/// Start cell of `chart`, or 0 when the handle is null or `chart` is out of
/// range.
///
/// # Safety
/// `packing` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn bcpp_packing_start(packing: *const BcppPacking, chart: usize) -> u32 {
    packing.as_ref().and_then(|h| h.inner.start_cells().get(chart).copied()).unwrap_or(0)
}

/// Evaluates `packing` against `instance`. Infeasible packings are reported
/// with `feasible = false`, not as an error.
///
/// # Safety
/// Both handles must be live; `report` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_evaluate(
    instance: *const BcppInstance,
    packing: *const BcppPacking,
    report: *mut BcppReport,
) -> BcppStatus {
    guard(|| {
        let inst = instance_ref(instance)?;
        let p = packing_ref(packing)?;
        if report.is_null() {
            return Err(null("report"));
        }
        let r = lib(evaluate(inst, p))?;
        *report = BcppReport { length: r.length, density: r.density, feasible: r.feasible };
        Ok(())
    })
}

/// Packing JSON `{"start_cell": {"<id>": <cell>, ..}}`.
///
/// # Safety
/// `packing` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_packing_to_json(
    packing: *const BcppPacking,
    out: *mut *mut c_char,
) -> BcppStatus {
    guard(|| {
        let p = packing_ref(packing)?;
        put_string(out, p.to_json())
    })
}

/// # Safety
/// `packing` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bcpp_packing_free(packing: *mut BcppPacking) {
    if !packing.is_null() {
        drop(Box::from_raw(packing));
    }
}

/// Boolean linear program of a two-bar instance in LP text format.
///
/// # Safety
/// `instance` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bcpp_export_lp(instance: *const BcppInstance, out: *mut *mut c_char) -> BcppStatus {
    guard(|| {
        let inst = instance_ref(instance)?;
        put_string(out, lib(blp::export_blp(inst))?)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn bcpp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

//! C interface to `discord_lab`.
//!
//! States are opaque `DlState` handles created by the `dl_state_*`
//! constructors and released with `dl_state_free`. Every fallible function
//! returns a `DlStatus` and writes results through out-pointers; on failure
//! `dl_last_error_message` describes the problem for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use discord_lab::applications::{interferometric_power, trace_discord_of_response};
use discord_lab::explorer::composite_boundary;
use discord_lab::linalg::{ComplexMatrix, C64};
use discord_lab::metrics::{distance, fidelity, MetricKind};
use discord_lab::response::{bell_diagonal_discord, discord_of_response, geometric_discord_bures, werner_discord};
use discord_lab::states::file::parse_state_json;
use discord_lab::states::{
    bell_diagonal, mq_family, werner, BellDiagonalSpectrum, DensityMatrix, MqFamily, WernerParameter,
};
use discord_lab::Error;

/// Opaque handle to a validated density matrix.
pub struct DlState {
    inner: DensityMatrix,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidArgument = 3,
    NonSquare = 4,
    NonHermitian = 5,
    NotPsd = 6,
    NotUnitTrace = 7,
    NotUnitary = 8,
    DimensionMismatch = 9,
    NonFinite = 10,
    InvalidSpectrum = 11,
    InvalidProbabilities = 12,
    OutOfRange = 13,
    OutOfRegion = 14,
    NotPure = 15,
    UnsupportedDimension = 16,
    ConvergenceFailure = 17,
    OptimizerFailure = 18,
    Panic = 19,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlMetric {
    Trace = 0,
    Hellinger = 1,
    Bures = 2,
}

impl From<DlMetric> for MetricKind {
    fn from(m: DlMetric) -> Self {
        match m {
            DlMetric::Trace => MetricKind::Trace,
            DlMetric::Hellinger => MetricKind::Hellinger,
            DlMetric::Bures => MetricKind::Bures,
        }
    }
}

/// The maximally correlated families indexed by their purity.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DlFamily {
    B = 0,
    C = 1,
    D = 2,
}

impl From<DlFamily> for MqFamily {
    fn from(f: DlFamily) -> Self {
        match f {
            DlFamily::B => MqFamily::B,
            DlFamily::C => MqFamily::C,
            DlFamily::D => MqFamily::D,
        }
    }
}

fn status_of(e: &Error) -> DlStatus {
    match e {
        Error::NonSquare { .. } => DlStatus::NonSquare,
        Error::NonHermitian { .. } => DlStatus::NonHermitian,
        Error::NotPsd { .. } => DlStatus::NotPsd,
        Error::NotUnitTrace { .. } => DlStatus::NotUnitTrace,
        Error::NotUnitary { .. } => DlStatus::NotUnitary,
        Error::DimensionMismatch { .. } => DlStatus::DimensionMismatch,
        Error::NonFinite => DlStatus::NonFinite,
        Error::ConvergenceFailure { .. } => DlStatus::ConvergenceFailure,
        Error::InvalidSpectrum(_) => DlStatus::InvalidSpectrum,
        Error::InvalidProbabilities(_) => DlStatus::InvalidProbabilities,
        Error::OutOfRange { .. } => DlStatus::OutOfRange,
        Error::OutOfRegion { .. } => DlStatus::OutOfRegion,
        Error::NotPure { .. } => DlStatus::NotPure,
        Error::UnsupportedDimension { .. } => DlStatus::UnsupportedDimension,
        Error::OptimizerFailure { .. } => DlStatus::OptimizerFailure,
        Error::InvalidArgument(_) => DlStatus::InvalidArgument,
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(DlStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(DlStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any error or panic for `dl_last_error_message`, and
/// turns the outcome into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DlStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DlStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            set_last_error(&format!("internal error: {msg}"));
            DlStatus::Panic
        }
    }
}

unsafe fn state_ref<'a>(s: *const DlState) -> Result<&'a DensityMatrix, Failure> {
    s.as_ref().map(|h| &h.inner).ok_or_else(|| null("state"))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_state(out: *mut *mut DlState, state: DensityMatrix) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(DlState { inner: state })));
    Ok(())
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn dl_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dl_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a state from `2 n^2` doubles holding the row-major entries as
/// interleaved `(re, im)` pairs, with `n = dim_a * dim_b`.
///
/// # Safety
/// `entries` must point to `2 * n * n` readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_state_from_dense(
    entries: *const f64,
    dim_a: usize,
    dim_b: usize,
    out: *mut *mut DlState,
) -> DlStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null("entries"));
        }
        let n = dim_a
            .checked_mul(dim_b)
            .filter(|n| *n > 0 && *n <= 64)
            .ok_or_else(|| Failure(DlStatus::InvalidArgument, "dim_a * dim_b must be in 1..=64".into()))?;
        let raw = std::slice::from_raw_parts(entries, 2 * n * n);
        let data = raw.chunks_exact(2).map(|p| C64::new(p[0], p[1])).collect();
        let m = ComplexMatrix::from_row_major(n, n, data)?;
        write_state(out, DensityMatrix::from_dense(m, dim_a, dim_b)?)
    })
}

/// Werner state with singlet weight `f`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_state_werner(f: f64, out: *mut *mut DlState) -> DlStatus {
    guard(|| write_state(out, werner(WernerParameter::new(f)?)))
}

/// Bell-diagonal state with weights on `(Theta+, Theta-, Psi+, Psi-)`.
///
/// # Safety
/// `gamma` must point to four readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_state_bell_diagonal(gamma: *const f64, out: *mut *mut DlState) -> DlStatus {
    guard(|| {
        let g = gamma_array(gamma)?;
        write_state(out, bell_diagonal(&BellDiagonalSpectrum::new(g)?))
    })
}

unsafe fn gamma_array(gamma: *const f64) -> Result<[f64; 4], Failure> {
    if gamma.is_null() {
        return Err(null("gamma"));
    }
    let mut g = [0.0; 4];
    g.copy_from_slice(std::slice::from_raw_parts(gamma, 4));
    Ok(g)
}

/// Member of a maximally correlated family at the given purity.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_state_family(family: DlFamily, purity: f64, out: *mut *mut DlState) -> DlStatus {
    guard(|| write_state(out, mq_family(family.into(), purity)?))
}

/// State from a JSON description, in the format read by the command-line tool.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_state_from_json(json: *const c_char, out: *mut *mut DlState) -> DlStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| Failure(DlStatus::InvalidUtf8, e.to_string()))?;
        write_state(out, parse_state_json(text)?.state)
    })
}

/// Releases a state. Null is ignored.
///
/// # Safety
/// `state` must come from a `dl_state_*` constructor and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dl_state_free(state: *mut DlState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `state` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_state_dims(state: *const DlState, dim_a: *mut usize, dim_b: *mut usize) -> DlStatus {
    guard(|| {
        let s = state_ref(state)?;
        write(dim_a, s.dim_a(), "dim_a")?;
        write(dim_b, s.dim_b(), "dim_b")
    })
}

/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_state_purity(state: *const DlState, out: *mut f64) -> DlStatus {
    guard(|| write(out, state_ref(state)?.purity(), "out"))
}

/// Discord of response for `metric`, with the minimizing axis angles.
/// `theta` and `phi` may be null.
///
/// # Safety
/// `state` must be a live handle and `value` writable; `theta` and `phi`
/// must be writable when non-null.
#[no_mangle]
pub unsafe extern "C" fn dl_discord_of_response(
    state: *const DlState,
    metric: DlMetric,
    value: *mut f64,
    theta: *mut f64,
    phi: *mut f64,
) -> DlStatus {
    guard(|| {
        let r = discord_of_response(state_ref(state)?, metric.into())?;
        write(value, r.value, "value")?;
        if !theta.is_null() {
            theta.write(r.argmin.theta());
        }
        if !phi.is_null() {
            phi.write(r.argmin.phi());
        }
        Ok(())
    })
}

/// Closed-form Bures discord of response of a Bell-diagonal spectrum.
///
/// # Safety
/// `gamma` must point to four readable doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_bell_diagonal_discord(gamma: *const f64, out: *mut f64) -> DlStatus {
    guard(|| {
        let g = BellDiagonalSpectrum::new(gamma_array(gamma)?)?;
        write(out, bell_diagonal_discord(&g), "out")
    })
}

/// Closed-form Bures discord of response of a Werner state.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_werner_discord(f: f64, out: *mut f64) -> DlStatus {
    guard(|| write(out, werner_discord(f)?, "out"))
}

/// Normalized Bures distance to the nearest classical-quantum state.
///
/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_geometric_discord(state: *const DlState, out: *mut f64) -> DlStatus {
    guard(|| write(out, geometric_discord_bures(state_ref(state)?)?.value, "out"))
}

/// Uhlmann fidelity `(tr |sqrt(a) sqrt(b)|)^2`.
///
/// # Safety
/// Both states must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_fidelity(a: *const DlState, b: *const DlState, out: *mut f64) -> DlStatus {
    guard(|| write(out, fidelity(state_ref(a)?, state_ref(b)?)?, "out"))
}

/// Trace, Hellinger or Bures distance between two states.
///
/// # Safety
/// Both states must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_distance(
    metric: DlMetric,
    a: *const DlState,
    b: *const DlState,
    out: *mut f64,
) -> DlStatus {
    guard(|| write(out, distance(metric.into(), state_ref(a)?, state_ref(b)?)?, "out"))
}

/// Trace discord of response and the matching worst-case reading error.
/// `worst_case_error` may be null.
///
/// # Safety
/// `state` must be a live handle and `value` writable; `worst_case_error`
/// must be writable when non-null.
#[no_mangle]
pub unsafe extern "C" fn dl_trace_discord(
    state: *const DlState,
    value: *mut f64,
    worst_case_error: *mut f64,
) -> DlStatus {
    guard(|| {
        let t = trace_discord_of_response(state_ref(state)?)?;
        write(value, t.value, "value")?;
        if !worst_case_error.is_null() {
            worst_case_error.write(t.worst_case_error());
        }
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dl_interferometric_power(state: *const DlState, out: *mut f64) -> DlStatus {
    guard(|| write(out, interferometric_power(state_ref(state)?)?.value, "out"))
}

/// Largest known Bures discord of response of a two-qubit state with the given purity.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dl_composite_boundary(purity: f64, out: *mut f64) -> DlStatus {
    guard(|| write(out, composite_boundary(purity)?, "out"))
}

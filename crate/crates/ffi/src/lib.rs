//! C ABI over `eliashberg_tc`.
//!
//! Measures and T_c reports are opaque handles owned by the caller and freed
//! with the matching `*_free` function. Every fallible call returns an
//! [`EtcStatus`]; on failure, [`etc_last_error_message`] describes the error
//! for the calling thread. Outputs are written only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eliashberg_tc::bounds;
use eliashberg_tc::gamma_model::g_top;
use eliashberg_tc::operator::{k_closed_form, k_numeric};
use eliashberg_tc::tc_solver::{tc_converged, tc_n};
use eliashberg_tc::{Error, ErrorKind, SpectralMeasure, TcReport, TcStatus};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtcStatus {
    Ok = 0,
    NullPointer = 1,
    Validation = 2,
    Numerical = 3,
    Io = 4,
    Panic = 5,
}

/// Status of one inverted temperature.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtcTcStatus {
    Proven = 0,
    Heuristic = 1,
    Undefined = 2,
}

impl From<TcStatus> for EtcTcStatus {
    fn from(s: TcStatus) -> Self {
        match s {
            TcStatus::Proven => EtcTcStatus::Proven,
            TcStatus::Heuristic => EtcTcStatus::Heuristic,
            TcStatus::Undefined => EtcTcStatus::Undefined,
        }
    }
}

/// A validated spectral measure.
pub struct EtcMeasure(SpectralMeasure);

/// A T_c report: ladder, brackets and converged estimate.
pub struct EtcReport(TcReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> EtcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EtcStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("{what} is null"));
            EtcStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            match e.kind() {
                ErrorKind::Validation => EtcStatus::Validation,
                ErrorKind::Numerical => EtcStatus::Numerical,
                ErrorKind::Io => EtcStatus::Io,
            }
        }
        Err(_) => {
            set_error("internal panic".into());
            EtcStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write<T>(p: *mut T, what: &'static str, value: T) -> Result<(), Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn c_str<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::Lib(Error::Input(format!("{what} is not UTF-8: {e}"))))
}

fn boxed<T>(v: T) -> *mut T {
    Box::into_raw(Box::new(v))
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn etc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn etc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a measure from the JSON measure-file format.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_measure_from_json(json: *const c_char, out: *mut *mut EtcMeasure) -> EtcStatus {
    guard(|| {
        let m = SpectralMeasure::from_json(c_str(json, "json")?)?;
        write(out, "out", boxed(EtcMeasure(m)))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_measure_from_file(path: *const c_char, out: *mut *mut EtcMeasure) -> EtcStatus {
    guard(|| {
        let m = SpectralMeasure::from_file(c_str(path, "path")?)?;
        write(out, "out", boxed(EtcMeasure(m)))
    })
}

/// A single atom at `omega`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_measure_einstein(omega: f64, out: *mut *mut EtcMeasure) -> EtcStatus {
    guard(|| write(out, "out", boxed(EtcMeasure(SpectralMeasure::einstein(omega)?))))
}

/// Atoms `(weights[i], omegas[i])`, `i < len`.
///
/// # Safety
/// `weights` and `omegas` must point to `len` doubles and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn etc_measure_discrete(
    weights: *const f64,
    omegas: *const f64,
    len: usize,
    out: *mut *mut EtcMeasure,
) -> EtcStatus {
    guard(|| {
        if len > 0 && (weights.is_null() || omegas.is_null()) {
            return Err(Failure::Null("weights or omegas"));
        }
        let atoms: Vec<(f64, f64)> = (0..len).map(|i| (*weights.add(i), *omegas.add(i))).collect();
        write(out, "out", boxed(EtcMeasure(SpectralMeasure::from_atoms(&atoms)?)))
    })
}

/// # Safety
/// `m` must come from an `etc_measure_*` constructor and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn etc_measure_free(m: *mut EtcMeasure) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Upper edge Ω̄ of the support, or NaN for a null handle.
///
/// # Safety
/// `m` must be null or a live measure handle.
#[no_mangle]
pub unsafe extern "C" fn etc_measure_omega_bar(m: *const EtcMeasure) -> f64 {
    m.as_ref().map_or(f64::NAN, |m| m.0.omega_bar())
}

/// ⟨ω^k⟩, or NaN for a null handle.
///
/// # Safety
/// `m` must be null or a live measure handle.
#[no_mangle]
pub unsafe extern "C" fn etc_measure_moment(m: *const EtcMeasure, k: u32) -> f64 {
    m.as_ref().map_or(f64::NAN, |m| m.0.moment(k))
}

/// 𝔨^(N)(P, T) by the dense eigensolver: a lower bound on 𝔨.
///
/// # Safety
/// `m` must be a live measure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_k_numeric(m: *const EtcMeasure, t: f64, n: usize, out: *mut f64) -> EtcStatus {
    guard(|| write(out, "out", k_numeric(&deref(m, "measure")?.0, t, n)?.k_value))
}

/// 𝔨^(N)(P, T) for N = 1..4 from the explicit root formulas.
///
/// # Safety
/// `m` must be a live measure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_k_closed_form(m: *const EtcMeasure, t: f64, n: usize, out: *mut f64) -> EtcStatus {
    guard(|| write(out, "out", k_closed_form(&deref(m, "measure")?.0, t, n)?.k_value))
}

/// 𝔨*(P, T), an upper bound on 𝔨.
///
/// # Safety
/// `m` must be a live measure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_k_star(m: *const EtcMeasure, t: f64, out: *mut f64) -> EtcStatus {
    guard(|| write(out, "out", bounds::k_star(&deref(m, "measure")?.0, t)?))
}

/// 𝔨♯(P, T) ≥ 𝔨*(P, T).
///
/// # Safety
/// `m` must be a live measure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_k_sharp(m: *const EtcMeasure, t: f64, out: *mut f64) -> EtcStatus {
    guard(|| write(out, "out", bounds::k_sharp(&deref(m, "measure")?.0, t)?))
}

/// T_c^(N): writes NaN and `ETC_TC_STATUS_UNDEFINED` when λ ≤ λ_N.
///
/// # Safety
/// `m` must be a live measure handle; `value` and `status` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn etc_tc_n(
    m: *const EtcMeasure,
    lambda: f64,
    n: usize,
    value: *mut f64,
    status: *mut EtcTcStatus,
) -> EtcStatus {
    guard(|| {
        if value.is_null() || status.is_null() {
            return Err(Failure::Null("value or status"));
        }
        let e = tc_n(&deref(m, "measure")?.0, lambda, n)?;
        write(value, "value", e.value.unwrap_or(f64::NAN))?;
        write(status, "status", e.status.into())
    })
}

/// T_c♭, a proven lower bound; NaN when λ ≤ Ω̄²/⟨ω²⟩.
///
/// # Safety
/// `m` must be a live measure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_tc_flat(m: *const EtcMeasure, lambda: f64, out: *mut f64) -> EtcStatus {
    guard(|| write(out, "out", bounds::tc_flat(&deref(m, "measure")?.0, lambda).unwrap_or(f64::NAN)))
}

/// T_c♯, a proven upper bound.
///
/// # Safety
/// `m` must be a live measure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_tc_sharp(m: *const EtcMeasure, lambda: f64, out: *mut f64) -> EtcStatus {
    guard(|| write(out, "out", bounds::tc_sharp(&deref(m, "measure")?.0, lambda)?))
}

/// T_c~, the conjectured upper bound.
///
/// # Safety
/// `m` must be a live measure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_tc_tilde(m: *const EtcMeasure, lambda: f64, out: *mut f64) -> EtcStatus {
    guard(|| write(out, "out", bounds::tc_tilde(&deref(m, "measure")?.0, lambda)?))
}

/// Runs the T_c ladder until consecutive orders agree to `tol`.
///
/// # Safety
/// `m` must be a live measure handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_tc_converged(
    m: *const EtcMeasure,
    lambda: f64,
    tol: f64,
    out: *mut *mut EtcReport,
) -> EtcStatus {
    guard(|| {
        let r = tc_converged(&deref(m, "measure")?.0, lambda, tol)?;
        write(out, "out", boxed(EtcReport(r)))
    })
}

/// # Safety
/// `r` must come from [`etc_tc_converged`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn etc_report_free(r: *mut EtcReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Converged T_c and the order it settled at; NaN and 0 if the ladder did not settle.
///
/// # Safety
/// `r` must be a live report handle; `value` and `n` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn etc_report_converged(r: *const EtcReport, value: *mut f64, n: *mut usize) -> EtcStatus {
    guard(|| {
        let r = &deref(r, "report")?.0;
        if value.is_null() || n.is_null() {
            return Err(Failure::Null("value or n"));
        }
        write(value, "value", r.converged_tc.unwrap_or(f64::NAN))?;
        write(n, "n", r.converged_n.unwrap_or(0))
    })
}

/// Number of ladder entries, or 0 for a null handle.
///
/// # Safety
/// `r` must be null or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn etc_report_ladder_len(r: *const EtcReport) -> usize {
    r.as_ref().map_or(0, |r| r.0.tc_ladder.len())
}

/// Ladder entry `index`: order, value (NaN if undefined) and status.
///
/// # Safety
/// `r` must be a live report handle; the outputs valid pointers.
#[no_mangle]
pub unsafe extern "C" fn etc_report_ladder_entry(
    r: *const EtcReport,
    index: usize,
    n: *mut usize,
    value: *mut f64,
    status: *mut EtcTcStatus,
) -> EtcStatus {
    guard(|| {
        let r = &deref(r, "report")?.0;
        if n.is_null() || value.is_null() || status.is_null() {
            return Err(Failure::Null("n, value or status"));
        }
        let e = r.tc_ladder.get(index).ok_or_else(|| {
            Error::Input(format!("ladder index {index} out of range (length {})", r.tc_ladder.len()))
        })?;
        write(n, "n", e.n)?;
        write(value, "value", e.value.unwrap_or(f64::NAN))?;
        write(status, "status", e.status.into())
    })
}

/// The report as JSON; free with [`etc_string_free`].
///
/// # Safety
/// `r` must be a live report handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_report_to_json(r: *const EtcReport, out: *mut *mut c_char) -> EtcStatus {
    guard(|| {
        let json = serde_json::to_string(&deref(r, "report")?.0)
            .map_err(|e| Error::Numerical(format!("JSON encoding: {e}")))?;
        let c = CString::new(json).map_err(|e| Error::Numerical(e.to_string()))?;
        write(out, "out", c.into_raw())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn etc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// g^(N)(γ), the top eigenvalue of the γ-model operator.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn etc_gamma_top(gamma: f64, n: usize, out: *mut f64) -> EtcStatus {
    guard(|| write(out, "out", g_top(gamma, n)?.value))
}

//! C ABI over the `ealie` library.
//!
//! Instances are opaque handles. Every function returns an [`EalieStatus`];
//! the message for the most recent failure on the calling thread is available
//! from [`ealie_last_error`]. Strings returned through out-pointers are owned
//! by the caller and must be released with [`ealie_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use ealie::cli::{build_instance, export_window_string, parse_suites, run_verification, Instance, InstanceSpec};
use ealie::decomp::RootSystemWindow;
use ealie::quantum_torus::SignMatrix;
use ealie::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EalieStatus {
    Ok = 0,
    /// At least one verification suite reported a failure.
    SuiteFailed = 1,
    InvalidArgument = 2,
    Io = 3,
    NullPointer = 4,
    Internal = 5,
}

/// A built algebra together with its decomposed window.
pub struct EalieInstance {
    inner: Instance,
    window: Option<RootSystemWindow>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).expect("nul bytes removed"));
}

fn status_of(e: &Error) -> EalieStatus {
    match e {
        Error::InvalidArgument(_) | Error::InvalidSignMatrix(_) | Error::Unsupported(_) => EalieStatus::InvalidArgument,
        Error::Io(_) => EalieStatus::Io,
        _ => EalieStatus::Internal,
    }
}

fn fail(e: Error) -> EalieStatus {
    set_error(e.to_string());
    status_of(&e)
}

fn guard(f: impl FnOnce() -> EalieStatus) -> EalieStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            EalieStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, EalieStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(EalieStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        EalieStatus::InvalidArgument
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> EalieStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            EalieStatus::Ok
        }
        Err(_) => {
            set_error("output contains a nul byte");
            EalieStatus::Internal
        }
    }
}

fn new_handle(spec: InstanceSpec, out: *mut *mut EalieInstance) -> EalieStatus {
    match build_instance(&spec) {
        Ok(inner) => {
            let h = Box::new(EalieInstance { inner, window: None });
            unsafe { *out = Box::into_raw(h) };
            EalieStatus::Ok
        }
        Err(e) => fail(e),
    }
}

impl EalieInstance {
    fn window(&mut self) -> Result<&RootSystemWindow, Error> {
        if self.window.is_none() {
            self.window = Some(self.inner.window()?);
        }
        Ok(self.window.as_ref().expect("just set"))
    }
}

/// Build an instance from a JSON object with the same fields as the CLI
/// flags, e.g. `{"construction":"affinized","ell":2,"nu":2,"q":[-1],"window":2}`.
///
/// # Safety
/// `spec_json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ealie_instance_new(spec_json: *const c_char, out: *mut *mut EalieInstance) -> EalieStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return EalieStatus::NullPointer;
        }
        let text = match read_str(spec_json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match serde_json::from_str::<InstanceSpec>(text) {
            Ok(spec) => new_handle(spec, out),
            Err(e) => {
                set_error(format!("bad instance JSON: {e}"));
                EalieStatus::InvalidArgument
            }
        }
    })
}

/// Build the skew-hermitian quantum torus algebra directly. `q_upper` holds
/// the strict upper triangle of the sign matrix row by row and may be null
/// when `q_len` is zero.
///
/// # Safety
/// `q_upper` must point to `q_len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ealie_instance_new_quantum_torus(
    ell: usize,
    nu: usize,
    q_upper: *const i64,
    q_len: usize,
    window: i64,
    out: *mut *mut EalieInstance,
) -> EalieStatus {
    guard(|| {
        if out.is_null() || (q_upper.is_null() && q_len > 0) {
            set_error("null pointer argument");
            return EalieStatus::NullPointer;
        }
        let q = if q_len == 0 { &[][..] } else { std::slice::from_raw_parts(q_upper, q_len) };
        new_handle(InstanceSpec::quantum_torus(ell, nu, q, window), out)
    })
}

/// # Safety
/// `inst` must come from one of the constructors and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ealie_instance_free(inst: *mut EalieInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Run the comma separated `suites` (empty or null for the defaults) and
/// return the JSON report. Returns `SuiteFailed` when the report is
/// produced but some check failed.
///
/// # Safety
/// `inst` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ealie_check(
    inst: *const EalieInstance,
    suites: *const c_char,
    out_json: *mut *mut c_char,
) -> EalieStatus {
    guard(|| {
        if inst.is_null() || out_json.is_null() {
            set_error("null pointer argument");
            return EalieStatus::NullPointer;
        }
        let list = if suites.is_null() {
            Vec::new()
        } else {
            match read_str(suites).map(parse_suites) {
                Ok(Ok(l)) => l,
                Ok(Err(e)) => return fail(e),
                Err(s) => return s,
            }
        };
        match run_verification(&(*inst).inner.spec, &list) {
            Ok(v) => {
                let s = write_string(out_json, v.report.to_string());
                if s == EalieStatus::Ok && !v.passed {
                    EalieStatus::SuiteFailed
                } else {
                    s
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Root records of the window as JSON lines, followed by a footer line.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ealie_export_string(inst: *mut EalieInstance, out: *mut *mut c_char) -> EalieStatus {
    guard(|| {
        if inst.is_null() || out.is_null() {
            set_error("null pointer argument");
            return EalieStatus::NullPointer;
        }
        match (*inst).window() {
            Ok(w) => write_string(out, export_window_string(w)),
            Err(e) => fail(e),
        }
    })
}

/// Write the export to `path`.
///
/// # Safety
/// `inst` must be a live handle and `path` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn ealie_export(inst: *mut EalieInstance, path: *const c_char) -> EalieStatus {
    guard(|| {
        if inst.is_null() {
            set_error("null instance");
            return EalieStatus::NullPointer;
        }
        let path = match read_str(path) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let text = match (*inst).window() {
            Ok(w) => export_window_string(w),
            Err(e) => return fail(e),
        };
        match std::fs::write(Path::new(path), text) {
            Ok(()) => EalieStatus::Ok,
            Err(e) => fail(Error::Io(e)),
        }
    })
}

/// Number of roots (including zero) in the window.
///
/// # Safety
/// `inst` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ealie_root_count(inst: *mut EalieInstance, out: *mut usize) -> EalieStatus {
    guard(|| {
        if inst.is_null() || out.is_null() {
            set_error("null pointer argument");
            return EalieStatus::NullPointer;
        }
        match (*inst).window() {
            Ok(w) => {
                *out = w.len();
                EalieStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// The sign kappa(sigma) for the sign matrix with the given strict upper
/// triangle. `sigma` has `nu` entries.
///
/// # Safety
/// `q_upper` must hold `nu(nu-1)/2` values, `sigma` `nu` values, and `out`
/// must be valid.
#[no_mangle]
pub unsafe extern "C" fn ealie_kappa(
    nu: usize,
    q_upper: *const i64,
    sigma: *const i64,
    out: *mut i32,
) -> EalieStatus {
    guard(|| {
        let len = nu * nu.saturating_sub(1) / 2;
        if out.is_null() || (nu > 0 && sigma.is_null()) || (len > 0 && q_upper.is_null()) {
            set_error("null pointer argument");
            return EalieStatus::NullPointer;
        }
        let upper = if len == 0 { &[][..] } else { std::slice::from_raw_parts(q_upper, len) };
        let s = if nu == 0 { &[][..] } else { std::slice::from_raw_parts(sigma, nu) };
        match SignMatrix::from_upper(nu, upper) {
            Ok(q) => {
                *out = q.kappa(s) as i32;
                EalieStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Message for the most recent failure on this thread. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ealie_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn ealie_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

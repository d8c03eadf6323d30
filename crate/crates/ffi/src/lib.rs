//! C ABI for `unifact`.
//!
//! Jobs and certificates cross the boundary as UTF-8 JSON. Results come
//! back through opaque handles that the caller releases with the matching
//! `*_free` function. Every entry point returns a [`UnifactStatus`]; the
//! message of the most recent failure on the calling thread is available
//! from [`unifact_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use serde_json::Value;
use unifact::{Fe, FiniteField};

/// Status codes. Non-negative values mirror the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnifactStatus {
    Ok = 0,
    /// Malformed input (schema, field, group or element errors).
    InputError = 1,
    /// Well-formed input for which the requested object does not exist.
    Refusal = 2,
    NullPointer = -1,
    InvalidUtf8 = -2,
    InvalidJson = -3,
}

/// Result of [`unifact_run`]: exit status and JSON report.
pub struct UnifactReport {
    status: i32,
    json: CString,
}

/// A finite field descriptor.
pub struct UnifactField {
    field: FiniteField,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: UnifactStatus, msg: impl Into<String>) -> UnifactStatus {
    set_error(msg);
    status
}

fn from_code(code: i32) -> UnifactStatus {
    match code {
        0 => UnifactStatus::Ok,
        2 => UnifactStatus::Refusal,
        _ => UnifactStatus::InputError,
    }
}

unsafe fn read_json(s: *const c_char) -> Result<Value, UnifactStatus> {
    if s.is_null() {
        return Err(fail(UnifactStatus::NullPointer, "null string"));
    }
    let text = CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(UnifactStatus::InvalidUtf8, "string is not UTF-8"))?;
    serde_json::from_str(text).map_err(|e| fail(UnifactStatus::InvalidJson, e.to_string()))
}

/// Message describing the last failure on this thread; empty if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn unifact_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Run a job given as JSON, e.g.
/// `{"command":"radical","field":3,"group":"S3"}`.
///
/// On return `*out` holds a report handle (also for refusals and input
/// errors, whose report carries an `error` object) unless the status is
/// negative.
///
/// # Safety
/// `job_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unifact_run(job_json: *const c_char, out: *mut *mut UnifactReport) -> UnifactStatus {
    if out.is_null() {
        return fail(UnifactStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    let job = match read_json(job_json) {
        Ok(v) => v,
        Err(s) => return s,
    };
    let o = unifact::job::run_json(&job);
    if o.status != 0 {
        set_error(o.report["error"]["message"].as_str().unwrap_or("operation refused"));
    }
    let json = CString::new(o.report.to_string()).expect("JSON has no interior NUL");
    *out = Box::into_raw(Box::new(UnifactReport { status: o.status, json }));
    from_code(o.status)
}

/// Exit status recorded in a report, or -1 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle from [`unifact_run`].
#[no_mangle]
pub unsafe extern "C" fn unifact_report_status(report: *const UnifactReport) -> i32 {
    report.as_ref().map_or(-1, |r| r.status)
}

/// JSON text of a report, borrowed from the handle.
///
/// # Safety
/// `report` must be null or a live handle from [`unifact_run`].
#[no_mangle]
pub unsafe extern "C" fn unifact_report_json(report: *const UnifactReport) -> *const c_char {
    report.as_ref().map_or(ptr::null(), |r| r.json.as_ptr())
}

/// # Safety
/// `report` must be null or a handle from [`unifact_run`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn unifact_report_free(report: *mut UnifactReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Check a certificate (or a full report carrying one).
///
/// # Safety
/// `certificate_json` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn unifact_verify(certificate_json: *const c_char) -> UnifactStatus {
    let v = match read_json(certificate_json) {
        Ok(v) => v,
        Err(s) => return s,
    };
    match unifact::certificate::verify(&v) {
        Ok(()) => UnifactStatus::Ok,
        Err(e) => {
            let status = if e.is_refusal() { UnifactStatus::Refusal } else { UnifactStatus::InputError };
            fail(status, format!("{}: {e}", e.code()))
        }
    }
}

/// GF(p^k) with the canonical modulus.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn unifact_field_new(p: u32, k: u32, out: *mut *mut UnifactField) -> UnifactStatus {
    if out.is_null() {
        return fail(UnifactStatus::NullPointer, "null output pointer");
    }
    *out = ptr::null_mut();
    match FiniteField::new(p, k) {
        Ok(field) => {
            *out = Box::into_raw(Box::new(UnifactField { field }));
            UnifactStatus::Ok
        }
        Err(e) => fail(UnifactStatus::InputError, format!("{}: {e}", e.code())),
    }
}

/// Number of elements of the field, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn unifact_field_order(field: *const UnifactField) -> u32 {
    field.as_ref().map_or(0, |f| f.field.order())
}

unsafe fn binary_op(
    field: *const UnifactField,
    a: u32,
    b: u32,
    out: *mut u32,
    op: impl Fn(&FiniteField, Fe, Fe) -> unifact::Result<Fe>,
) -> UnifactStatus {
    let (Some(f), false) = (field.as_ref(), out.is_null()) else {
        return fail(UnifactStatus::NullPointer, "null handle or output pointer");
    };
    let q = f.field.order();
    if a >= q || b >= q {
        return fail(UnifactStatus::InputError, "element index out of range");
    }
    match op(&f.field, Fe::from_index(a), Fe::from_index(b)) {
        Ok(c) => {
            *out = c.index();
            UnifactStatus::Ok
        }
        Err(e) => fail(UnifactStatus::InputError, format!("{}: {e}", e.code())),
    }
}

/// Sum of two elements given by packed index `sum c_i p^i`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn unifact_field_add(field: *const UnifactField, a: u32, b: u32, out: *mut u32) -> UnifactStatus {
    binary_op(field, a, b, out, |f, x, y| Ok(f.add(x, y)))
}

/// Product of two elements given by packed index.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn unifact_field_mul(field: *const UnifactField, a: u32, b: u32, out: *mut u32) -> UnifactStatus {
    binary_op(field, a, b, out, |f, x, y| Ok(f.mul(x, y)))
}

/// Quotient `a / b`; fails with `UNIFACT_STATUS_INPUT_ERROR` when `b = 0`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn unifact_field_div(field: *const UnifactField, a: u32, b: u32, out: *mut u32) -> UnifactStatus {
    binary_op(field, a, b, out, |f, x, y| Ok(f.mul(x, f.inv(y)?)))
}

/// # Safety
/// `field` must be null or a handle from [`unifact_field_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn unifact_field_free(field: *mut UnifactField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

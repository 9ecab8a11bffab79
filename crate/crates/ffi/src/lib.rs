//! C ABI for the eqlab checker: opaque handles, status codes, and
//! caller-freed strings.
//!
//! Every function that can fail returns an [`EqlabStatus`]; on failure a
//! thread-local message is retrievable with `eqlab_last_error_message`
//! until the next failing call on the same thread. Handles returned
//! through out-parameters are freed with the matching `_free` function;
//! strings with `eqlab_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eqlab::cli::{self, CheckReport, CliError, Instance};

/// Status codes mirroring the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqlabStatus {
    Ok = 0,
    Counterexample = 1,
    ParseError = 2,
    CapExceeded = 3,
    UnknownObject = 4,
    NullArgument = 5,
    Panic = 6,
}

/// An opaque loaded instance.
pub struct EqlabInstance {
    inner: Instance,
}

/// An opaque suite report.
pub struct EqlabReport {
    inner: Vec<CheckReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &CliError) -> EqlabStatus {
    match err {
        CliError::CapExceeded(_) => EqlabStatus::CapExceeded,
        CliError::UnknownObject(_) => EqlabStatus::UnknownObject,
        _ => EqlabStatus::ParseError,
    }
}

/// The message of the most recent failure on this thread. Valid until
/// the next failing call; never null.
#[no_mangle]
pub extern "C" fn eqlab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

unsafe fn read_cstr<'a>(ptr: *const c_char) -> Option<&'a str> {
    if ptr.is_null() {
        return None;
    }
    CStr::from_ptr(ptr).to_str().ok()
}

fn guarded<F: FnOnce() -> EqlabStatus>(f: F) -> EqlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            EqlabStatus::Panic
        }
    }
}

/// Parse an instance from JSON text.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid
/// pointer; on `Ok` the caller owns the handle.
#[no_mangle]
pub unsafe extern "C" fn eqlab_instance_parse(
    json: *const c_char,
    out: *mut *mut EqlabInstance,
) -> EqlabStatus {
    guarded(|| {
        let (Some(text), false) = (read_cstr(json), out.is_null()) else {
            set_error("null or non-UTF-8 argument");
            return EqlabStatus::NullArgument;
        };
        match cli::load_instance(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EqlabInstance { inner }));
                EqlabStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                *out = ptr::null_mut();
                status_of(&e)
            }
        }
    })
}

/// Load an instance file from a path.
///
/// # Safety
/// `path` must be a valid NUL-terminated string and `out` a valid
/// pointer; on `Ok` the caller owns the handle.
#[no_mangle]
pub unsafe extern "C" fn eqlab_instance_load(
    path: *const c_char,
    out: *mut *mut EqlabInstance,
) -> EqlabStatus {
    guarded(|| {
        let (Some(path), false) = (read_cstr(path), out.is_null()) else {
            set_error("null or non-UTF-8 argument");
            return EqlabStatus::NullArgument;
        };
        let text = match std::fs::read_to_string(path) {
            Ok(text) => text,
            Err(e) => {
                set_error(&e.to_string());
                *out = ptr::null_mut();
                return EqlabStatus::ParseError;
            }
        };
        match cli::load_instance(&text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(EqlabInstance { inner }));
                EqlabStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                *out = ptr::null_mut();
                status_of(&e)
            }
        }
    })
}

/// Free an instance handle. Null is ignored.
///
/// # Safety
/// The handle must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eqlab_instance_free(instance: *mut EqlabInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Run a suite (`axioms`, `equ-equivalence`, `eff-quotient`, or `all`).
/// Returns `Counterexample` when checks ran and at least one failed; a
/// report handle is produced in both that case and `Ok`.
///
/// # Safety
/// `instance` and `suite` must be valid; on `Ok`/`Counterexample` the
/// caller owns the report handle.
#[no_mangle]
pub unsafe extern "C" fn eqlab_run_suite(
    instance: *const EqlabInstance,
    suite: *const c_char,
    out: *mut *mut EqlabReport,
) -> EqlabStatus {
    guarded(|| {
        if instance.is_null() || out.is_null() {
            set_error("null argument");
            return EqlabStatus::NullArgument;
        }
        let Some(suite) = read_cstr(suite) else {
            set_error("null or non-UTF-8 suite name");
            return EqlabStatus::NullArgument;
        };
        let suites: Vec<String> = if suite == "all" {
            ["axioms", "equ-equivalence", "eff-quotient"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            vec![suite.to_string()]
        };
        match cli::run(&(*instance).inner, &suites) {
            Ok(reports) => {
                let passed = reports.iter().all(|r| r.passed());
                *out = Box::into_raw(Box::new(EqlabReport { inner: reports }));
                if passed {
                    EqlabStatus::Ok
                } else {
                    set_error("at least one check failed");
                    EqlabStatus::Counterexample
                }
            }
            Err(e) => {
                set_error(&e.to_string());
                *out = ptr::null_mut();
                status_of(&e)
            }
        }
    })
}

/// Did every check in the report pass?
///
/// # Safety
/// `report` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn eqlab_report_passed(report: *const EqlabReport) -> bool {
    if report.is_null() {
        return false;
    }
    (*report).inner.iter().all(|r| r.passed())
}

/// Render the report as text. The caller frees the string.
///
/// # Safety
/// `report` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn eqlab_report_text(
    report: *const EqlabReport,
    out: *mut *mut c_char,
) -> EqlabStatus {
    guarded(|| {
        if report.is_null() || out.is_null() {
            set_error("null argument");
            return EqlabStatus::NullArgument;
        }
        let text: String = (*report).inner.iter().map(|r| r.render_text()).collect();
        *out = CString::new(text.replace('\0', " "))
            .map(CString::into_raw)
            .unwrap_or(ptr::null_mut());
        EqlabStatus::Ok
    })
}

/// Render the report as JSON. The caller frees the string.
///
/// # Safety
/// `report` and `out` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn eqlab_report_json(
    report: *const EqlabReport,
    out: *mut *mut c_char,
) -> EqlabStatus {
    guarded(|| {
        if report.is_null() || out.is_null() {
            set_error("null argument");
            return EqlabStatus::NullArgument;
        }
        let value = serde_json::Value::Array(
            (*report).inner.iter().map(|r| r.render_json()).collect(),
        );
        let text = serde_json::to_string_pretty(&value).unwrap_or_default();
        *out = CString::new(text)
            .map(CString::into_raw)
            .unwrap_or(ptr::null_mut());
        EqlabStatus::Ok
    })
}

/// Free a report handle. Null is ignored.
///
/// # Safety
/// The handle must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eqlab_report_free(report: *mut EqlabReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Render a declared object as DOT. The caller frees the string.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn eqlab_emit_dot(
    instance: *const EqlabInstance,
    name: *const c_char,
    out: *mut *mut c_char,
) -> EqlabStatus {
    guarded(|| {
        if instance.is_null() || out.is_null() {
            set_error("null argument");
            return EqlabStatus::NullArgument;
        }
        let Some(name) = read_cstr(name) else {
            set_error("null or non-UTF-8 object name");
            return EqlabStatus::NullArgument;
        };
        match cli::emit_dot(&(*instance).inner, name) {
            Ok(dot) => {
                *out = CString::new(dot)
                    .map(CString::into_raw)
                    .unwrap_or(ptr::null_mut());
                EqlabStatus::Ok
            }
            Err(e) => {
                set_error(&e.to_string());
                *out = ptr::null_mut();
                status_of(&e)
            }
        }
    })
}

/// Free a string returned by this library. Null is ignored.
///
/// # Safety
/// The pointer must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn eqlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"{
        "spaces": {"sierp": {"points": 2, "opens": [[], [1], [0, 1]]}},
        "equilogical": {"diag": {"space": "sierp", "rel": [[0, 0], [1, 1]]}},
        "top_spans": {"S": {"equilogical": "diag"}}
    }"#;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn parse_run_and_report() {
        unsafe {
            let mut instance: *mut EqlabInstance = ptr::null_mut();
            let status = eqlab_instance_parse(c(SMALL).as_ptr(), &mut instance);
            assert_eq!(status, EqlabStatus::Ok);
            let mut report: *mut EqlabReport = ptr::null_mut();
            let status = eqlab_run_suite(instance, c("axioms").as_ptr(), &mut report);
            assert_eq!(status, EqlabStatus::Ok);
            assert!(eqlab_report_passed(report));
            let mut text: *mut c_char = ptr::null_mut();
            assert_eq!(eqlab_report_text(report, &mut text), EqlabStatus::Ok);
            let rendered = CStr::from_ptr(text).to_str().unwrap().to_string();
            assert!(rendered.contains("suite axioms"));
            eqlab_string_free(text);
            let mut dot: *mut c_char = ptr::null_mut();
            assert_eq!(
                eqlab_emit_dot(instance, c("S").as_ptr(), &mut dot),
                EqlabStatus::Ok
            );
            let dot_text = CStr::from_ptr(dot).to_str().unwrap().to_string();
            assert!(dot_text.starts_with("digraph"));
            eqlab_string_free(dot);
            eqlab_report_free(report);
            eqlab_instance_free(instance);
        }
    }

    #[test]
    fn parse_error_reports_message() {
        unsafe {
            let mut instance: *mut EqlabInstance = ptr::null_mut();
            let status = eqlab_instance_parse(c("{not json").as_ptr(), &mut instance);
            assert_eq!(status, EqlabStatus::ParseError);
            assert!(instance.is_null());
            let msg = CStr::from_ptr(eqlab_last_error_message())
                .to_str()
                .unwrap();
            assert!(!msg.is_empty());
        }
    }

    #[test]
    fn unknown_dot_object() {
        unsafe {
            let mut instance: *mut EqlabInstance = ptr::null_mut();
            eqlab_instance_parse(c(SMALL).as_ptr(), &mut instance);
            let mut dot: *mut c_char = ptr::null_mut();
            let status = eqlab_emit_dot(instance, c("missing").as_ptr(), &mut dot);
            assert_eq!(status, EqlabStatus::UnknownObject);
            assert!(dot.is_null());
            eqlab_instance_free(instance);
        }
    }

    #[test]
    fn null_arguments_are_rejected() {
        unsafe {
            let mut instance: *mut EqlabInstance = ptr::null_mut();
            assert_eq!(
                eqlab_instance_parse(ptr::null(), &mut instance),
                EqlabStatus::NullArgument
            );
            let mut report: *mut EqlabReport = ptr::null_mut();
            assert_eq!(
                eqlab_run_suite(ptr::null(), c("axioms").as_ptr(), &mut report),
                EqlabStatus::NullArgument
            );
        }
    }
}

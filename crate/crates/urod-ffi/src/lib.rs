//! C ABI over the check registry.
//!
//! Handles are opaque and owned by the caller: every `*_new`/`run` result must be released
//! with the matching `*_free`. Strings returned as `char *` are freed with
//! `urod_string_free`; `const char *` results are static. Functions return a `UrodCode`;
//! the message of the last error on the calling thread is available from
//! `urod_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;
use std::sync::OnceLock;

use urod::cache::Cache;
use urod::registry::{self, CheckRequest, Suite};
use urod::report::{self, Report, RunOptions, SuiteReport};
use urod::verdict::Status;

/// Result codes; `Pass`, `Fail` and `Usage` match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UrodCode {
    Pass = 0,
    Fail = 1,
    Usage = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    Io = 5,
    Internal = 6,
}

/// Outcome stored in a report handle.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UrodStatus {
    Pass = 0,
    Fail = 1,
    Skipped = 2,
}

/// A check request under construction.
pub struct UrodRequest {
    req: CheckRequest,
    cache_dir: Option<PathBuf>,
}

/// A finished single-check or suite report.
pub struct UrodReport {
    inner: ReportKind,
}

enum ReportKind {
    Single(Report),
    Suite(Box<SuiteReport>),
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).expect("no interior nul"));
}

fn guard(f: impl FnOnce() -> UrodCode) -> UrodCode {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(c) => c,
        Err(_) => {
            set_error("internal panic");
            UrodCode::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, UrodCode> {
    if p.is_null() {
        set_error(format!("{what} is NULL"));
        return Err(UrodCode::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        UrodCode::InvalidUtf8
    })
}

fn status_code(s: Status) -> UrodCode {
    if s == Status::Pass {
        UrodCode::Pass
    } else {
        UrodCode::Fail
    }
}

fn open_cache(dir: &Option<PathBuf>) -> Result<Option<Cache>, UrodCode> {
    match dir {
        None => Ok(None),
        Some(d) => Cache::open(d).map(Some).map_err(|e| {
            set_error(format!("cache directory {}: {e}", d.display()));
            UrodCode::Io
        }),
    }
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn urod_version() -> *const c_char {
    static V: OnceLock<CString> = OnceLock::new();
    V.get_or_init(|| CString::new(env!("CARGO_PKG_VERSION")).unwrap()).as_ptr()
}

/// Message for the last failing call on this thread; empty if none. Valid until the next call.
#[no_mangle]
pub extern "C" fn urod_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Number of registered checks.
#[no_mangle]
pub extern "C" fn urod_check_count() -> usize {
    registry::registry().len()
}

/// Id of check `index`, static; NULL when out of range.
#[no_mangle]
pub extern "C" fn urod_check_id(index: usize) -> *const c_char {
    static IDS: OnceLock<Vec<CString>> = OnceLock::new();
    let ids = IDS.get_or_init(|| registry::registry().iter().map(|c| CString::new(c.id).unwrap()).collect());
    ids.get(index).map_or(ptr::null(), |s| s.as_ptr())
}

/// New request for check `id` with default order, parameters and seed. NULL on a NULL or
/// non-UTF-8 id; unknown ids are reported by `urod_request_validate` and `urod_run`.
///
/// # Safety
/// `id` must be NULL or a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn urod_request_new(id: *const c_char) -> *mut UrodRequest {
    match text(id, "id") {
        Ok(s) => Box::into_raw(Box::new(UrodRequest { req: CheckRequest::new(s), cache_dir: None })),
        Err(_) => ptr::null_mut(),
    }
}

/// # Safety
/// `r` must be NULL or a handle from `urod_request_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urod_request_free(r: *mut UrodRequest) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `r` must be a live request handle.
#[no_mangle]
pub unsafe extern "C" fn urod_request_set_order(r: *mut UrodRequest, order: i64) -> UrodCode {
    match r.as_mut() {
        None => {
            set_error("request is NULL");
            UrodCode::NullArgument
        }
        Some(r) => {
            r.req.order = Some(order);
            UrodCode::Pass
        }
    }
}

/// # Safety
/// `r` must be a live request handle.
#[no_mangle]
pub unsafe extern "C" fn urod_request_set_seed(r: *mut UrodRequest, seed: u64) -> UrodCode {
    match r.as_mut() {
        None => {
            set_error("request is NULL");
            UrodCode::NullArgument
        }
        Some(r) => {
            r.req.seed = seed;
            UrodCode::Pass
        }
    }
}

/// Set `name=value`; values are checked by `urod_request_validate`.
///
/// # Safety
/// `r` must be a live request handle; `name` and `value` nul-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn urod_request_set_param(r: *mut UrodRequest, name: *const c_char, value: *const c_char) -> UrodCode {
    guard(|| {
        let Some(r) = r.as_mut() else {
            set_error("request is NULL");
            return UrodCode::NullArgument;
        };
        let (k, v) = match (text(name, "name"), text(value, "value")) {
            (Ok(k), Ok(v)) => (k, v),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        r.req.params.insert(k.to_string(), v.to_string());
        UrodCode::Pass
    })
}

/// Cache directory for this request; NULL disables caching.
///
/// # Safety
/// `r` must be a live request handle; `dir` NULL or a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn urod_request_set_cache_dir(r: *mut UrodRequest, dir: *const c_char) -> UrodCode {
    guard(|| {
        let Some(r) = r.as_mut() else {
            set_error("request is NULL");
            return UrodCode::NullArgument;
        };
        if dir.is_null() {
            r.cache_dir = None;
            return UrodCode::Pass;
        }
        match text(dir, "dir") {
            Ok(d) => {
                r.cache_dir = Some(PathBuf::from(d));
                UrodCode::Pass
            }
            Err(c) => c,
        }
    })
}

/// `Pass` when the request is valid, `Usage` otherwise; nothing is computed.
///
/// # Safety
/// `r` must be a live request handle.
#[no_mangle]
pub unsafe extern "C" fn urod_request_validate(r: *const UrodRequest) -> UrodCode {
    guard(|| {
        let Some(r) = r.as_ref() else {
            set_error("request is NULL");
            return UrodCode::NullArgument;
        };
        match registry::validate(&r.req) {
            Ok(_) => UrodCode::Pass,
            Err(e) => {
                set_error(e.to_string());
                UrodCode::Usage
            }
        }
    })
}

/// Run a request. On `Pass` or `Fail` a report is stored in `*out`; otherwise `*out` is NULL.
///
/// # Safety
/// `r` must be a live request handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn urod_run(r: *const UrodRequest, out: *mut *mut UrodReport) -> UrodCode {
    if out.is_null() {
        set_error("out is NULL");
        return UrodCode::NullArgument;
    }
    *out = ptr::null_mut();
    guard(|| {
        let Some(r) = r.as_ref() else {
            set_error("request is NULL");
            return UrodCode::NullArgument;
        };
        let cache = match open_cache(&r.cache_dir) {
            Ok(c) => c,
            Err(c) => return c,
        };
        match report::run(&r.req, RunOptions { cache: cache.as_ref(), timings: false }) {
            Ok(rep) => {
                let code = status_code(rep.status);
                *out = Box::into_raw(Box::new(UrodReport { inner: ReportKind::Single(rep) }));
                code
            }
            Err(e) => {
                set_error(e.to_string());
                UrodCode::Usage
            }
        }
    })
}

/// Run the `quick` or `full` suite.
///
/// # Safety
/// `name` must be a nul-terminated string, `cache_dir` NULL or one, and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn urod_run_suite(
    name: *const c_char,
    seed: u64,
    cache_dir: *const c_char,
    out: *mut *mut UrodReport,
) -> UrodCode {
    if out.is_null() {
        set_error("out is NULL");
        return UrodCode::NullArgument;
    }
    *out = ptr::null_mut();
    guard(|| {
        let name = match text(name, "name") {
            Ok(n) => n,
            Err(c) => return c,
        };
        let Some(s) = Suite::parse(name) else {
            set_error(format!("unknown suite '{name}' (quick or full)"));
            return UrodCode::Usage;
        };
        let dir = if cache_dir.is_null() {
            None
        } else {
            match text(cache_dir, "cache_dir") {
                Ok(d) => Some(PathBuf::from(d)),
                Err(c) => return c,
            }
        };
        let cache = match open_cache(&dir) {
            Ok(c) => c,
            Err(c) => return c,
        };
        let rep = report::run_suite(s, seed, RunOptions { cache: cache.as_ref(), timings: false }, None);
        let code = status_code(rep.status);
        *out = Box::into_raw(Box::new(UrodReport { inner: ReportKind::Suite(Box::new(rep)) }));
        code
    })
}

/// Aggregate status of a report.
///
/// # Safety
/// `r` must be a live report handle.
#[no_mangle]
pub unsafe extern "C" fn urod_report_status(r: *const UrodReport) -> UrodStatus {
    let s = match r.as_ref().map(|r| &r.inner) {
        Some(ReportKind::Single(x)) => x.status,
        Some(ReportKind::Suite(x)) => x.status,
        None => Status::Fail,
    };
    match s {
        Status::Pass => UrodStatus::Pass,
        Status::Fail => UrodStatus::Fail,
        Status::Skipped => UrodStatus::Skipped,
    }
}

/// Versioned JSON form of a report; free with `urod_string_free`. NULL on a NULL handle.
///
/// # Safety
/// `r` must be NULL or a live report handle.
#[no_mangle]
pub unsafe extern "C" fn urod_report_json(r: *const UrodReport) -> *mut c_char {
    let Some(r) = r.as_ref() else {
        set_error("report is NULL");
        return ptr::null_mut();
    };
    let s = match &r.inner {
        ReportKind::Single(x) => x.to_json(),
        ReportKind::Suite(x) => x.to_json(),
    };
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// # Safety
/// `r` must be NULL or a handle from `urod_run`/`urod_run_suite` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urod_report_free(r: *mut UrodReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

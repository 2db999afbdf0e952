//! The C entry points called from Rust.

use std::ffi::{CStr, CString};
use std::ptr;

use urod_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn registry_is_exposed() {
    let n = urod_check_count();
    assert!(n >= 25);
    let first = unsafe { CStr::from_ptr(urod_check_id(0)) }.to_str().unwrap();
    assert_eq!(first, urod::registry::registry()[0].id);
    assert!(urod_check_id(n).is_null());
}

#[test]
fn run_and_report() {
    unsafe {
        let r = urod_request_new(c("configurations.split").as_ptr());
        assert_eq!(urod_request_set_order(r, 8), UrodCode::Pass);
        assert_eq!(urod_request_set_param(r, c("k").as_ptr(), c("2").as_ptr()), UrodCode::Pass);
        assert_eq!(urod_request_set_seed(r, 4), UrodCode::Pass);
        let mut rep = ptr::null_mut();
        assert_eq!(urod_run(r, &mut rep), UrodCode::Pass);
        assert_eq!(urod_report_status(rep), UrodStatus::Pass);
        let js = urod_report_json(rep);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(js).to_str().unwrap()).unwrap();
        assert_eq!(v["order"], 8);
        assert_eq!(v["seed"], 4);
        assert_eq!(v["params"]["k"], "2");
        urod_string_free(js);
        urod_report_free(rep);
        urod_request_free(r);
    }
}

#[test]
fn usage_errors_and_null_handles() {
    unsafe {
        let r = urod_request_new(c("characters.c5").as_ptr());
        urod_request_set_param(r, c("n").as_ptr(), c("9").as_ptr());
        assert_eq!(urod_request_validate(r), UrodCode::Usage);
        let msg = CStr::from_ptr(urod_last_error()).to_str().unwrap();
        assert!(msg.contains("n=9"), "{msg}");
        let mut rep = ptr::null_mut();
        assert_eq!(urod_run(r, &mut rep), UrodCode::Usage);
        assert!(rep.is_null());
        urod_request_free(r);

        assert!(urod_request_new(ptr::null()).is_null());
        let bad = [0xffu8, 0];
        assert!(urod_request_new(bad.as_ptr().cast()).is_null());
        assert_eq!(urod_request_validate(ptr::null()), UrodCode::NullArgument);
        assert_eq!(urod_run(ptr::null(), ptr::null_mut()), UrodCode::NullArgument);
        assert!(urod_report_json(ptr::null()).is_null());
        urod_report_free(ptr::null_mut());
        urod_string_free(ptr::null_mut());
    }
}

#[test]
fn cached_run_matches_uncached() {
    let d = tempfile::tempdir().unwrap();
    let dir = c(d.path().to_str().unwrap());
    let json = |cache: bool| unsafe {
        let r = urod_request_new(c("ope.primary").as_ptr());
        if cache {
            urod_request_set_cache_dir(r, dir.as_ptr());
        }
        let mut rep = ptr::null_mut();
        assert_eq!(urod_run(r, &mut rep), UrodCode::Pass);
        let js = urod_report_json(rep);
        let s = CStr::from_ptr(js).to_str().unwrap().to_string();
        urod_string_free(js);
        urod_report_free(rep);
        urod_request_free(r);
        s
    };
    let a = json(true);
    let b = json(true);
    assert_eq!(a, b);
    assert_eq!(a, json(false));
    assert_eq!(std::fs::read_dir(d.path()).unwrap().count(), 1);
}

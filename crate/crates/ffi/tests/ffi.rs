use std::ffi::{CStr, CString};
use std::ptr;

use splithom_ffi::*;

fn catalog(name: &str, param: u32) -> *mut SplithomAlgebra {
    let name = CString::new(name).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { splithom_algebra_from_catalog(name.as_ptr(), param, &mut h) }, SplithomStatus::Ok);
    h
}

fn report(h: *const SplithomAlgebra, cmd: &str) -> (SplithomStatus, serde_json::Value) {
    let cmd = CString::new(cmd).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { splithom_report_json(h, cmd.as_ptr(), &mut out) };
    let value = if out.is_null() {
        serde_json::Value::Null
    } else {
        let v = serde_json::from_str(unsafe { CStr::from_ptr(out) }.to_str().unwrap()).unwrap();
        unsafe { splithom_string_free(out) };
        v
    };
    (status, value)
}

#[test]
fn decompose_through_handle() {
    let h = catalog("example1", 2);
    assert_eq!(unsafe { splithom_algebra_dim(h) }, 8);
    let mut passed = false;
    assert_eq!(unsafe { splithom_validate(h, &mut passed) }, SplithomStatus::Ok);
    assert!(passed);
    let (status, v) = report(h, "decompose");
    assert_eq!(status, SplithomStatus::Ok);
    assert_eq!(v["u"]["dim"], 2);
    let (status, v) = report(h, "components");
    assert_eq!(status, SplithomStatus::Validation);
    assert_eq!(v["status"], "PRECONDITION_UNMET");
    unsafe { splithom_algebra_free(h) };
}

#[test]
fn magsa_override_and_errors() {
    let h = catalog("sl2", 0);
    let bad = [7usize];
    assert_eq!(unsafe { splithom_algebra_set_magsa(h, bad.as_ptr(), 1) }, SplithomStatus::Usage);
    assert!(!splithom_last_error_message().is_null());
    let (status, _) = report(h, "bogus");
    assert_eq!(status, SplithomStatus::Usage);
    let (status, v) = report(h, "simplicity");
    assert_eq!(status, SplithomStatus::Ok);
    assert_eq!(v["verdict"], "SIMPLE");
    unsafe { splithom_algebra_free(h) };
}

#[test]
fn parse_failures_and_nulls() {
    let text = CString::new(r#"{"field":"R","basis":[]}"#).unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { splithom_algebra_from_json(text.as_ptr(), false, &mut h) }, SplithomStatus::Parse);
    assert!(h.is_null());
    let msg = unsafe { CStr::from_ptr(splithom_last_error_message()) }.to_str().unwrap().to_owned();
    assert!(msg.contains("unsupported field"), "{msg}");
    assert_eq!(unsafe { splithom_algebra_from_json(ptr::null(), false, &mut h) }, SplithomStatus::NullPointer);
    assert_eq!(unsafe { splithom_algebra_dim(ptr::null()) }, 0);
    unsafe { splithom_algebra_free(ptr::null_mut()) };
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/splithom.h")).unwrap();
    for symbol in [
        "splithom_algebra_from_json",
        "splithom_algebra_from_catalog",
        "splithom_algebra_free",
        "splithom_report_json",
        "splithom_string_free",
        "splithom_last_error_message",
        "SPLITHOM_STATUS_NOT_SPLIT",
        "typedef struct SplithomAlgebra SplithomAlgebra",
    ] {
        assert!(header.contains(symbol), "missing {symbol}");
    }
}

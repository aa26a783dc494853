use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use ealie_ffi::*;

fn take(s: *mut std::ffi::c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { ealie_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(ealie_last_error()) }.to_str().unwrap().to_owned()
}

#[test]
fn quantum_torus_roundtrip() {
    let q = [-1i64];
    let mut inst = ptr::null_mut();
    let st = unsafe { ealie_instance_new_quantum_torus(2, 2, q.as_ptr(), 1, 1, &mut inst) };
    assert_eq!(st, EalieStatus::Ok);
    let mut n = 0usize;
    assert_eq!(unsafe { ealie_root_count(inst, &mut n) }, EalieStatus::Ok);
    // 8 roots and zero at each of 9 lattice points
    assert_eq!(n, 81);

    let mut text = ptr::null_mut();
    assert_eq!(unsafe { ealie_export_string(inst, &mut text) }, EalieStatus::Ok);
    let text = take(text);
    assert_eq!(text.lines().count(), 82);
    let footer: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(footer["nullity"], 2);

    let suites = CString::new("D").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { ealie_check(inst, suites.as_ptr(), &mut report) }, EalieStatus::Ok);
    let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(report["suite_results"]["D"]["passed"], true);
    unsafe { ealie_instance_free(inst) };
}

#[test]
fn json_spec_and_failures() {
    let spec = CString::new(r#"{"construction":"cocycle-extension","type":"C","rank":2,"window":0}"#).unwrap();
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { ealie_instance_new(spec.as_ptr(), &mut inst) }, EalieStatus::Ok);
    let suites = CString::new("TAME").unwrap();
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { ealie_check(inst, suites.as_ptr(), &mut report) }, EalieStatus::SuiteFailed);
    let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert!(!report["witnesses"].as_array().unwrap().is_empty());

    let bad = CString::new("NOPE").unwrap();
    let mut r2 = ptr::null_mut();
    assert_eq!(unsafe { ealie_check(inst, bad.as_ptr(), &mut r2) }, EalieStatus::InvalidArgument);
    assert!(r2.is_null());
    unsafe { ealie_instance_free(inst) };
}

#[test]
fn invalid_arguments_set_message() {
    let q = [5i64];
    let mut inst = ptr::null_mut();
    let st = unsafe { ealie_instance_new_quantum_torus(2, 2, q.as_ptr(), 1, 1, &mut inst) };
    assert_eq!(st, EalieStatus::InvalidArgument);
    assert!(inst.is_null());
    assert!(!last_error().is_empty());

    let spec = CString::new("{not json").unwrap();
    assert_eq!(unsafe { ealie_instance_new(spec.as_ptr(), &mut inst) }, EalieStatus::InvalidArgument);
    assert!(last_error().contains("JSON"));
}

#[test]
fn export_to_missing_directory_is_io() {
    let mut inst = ptr::null_mut();
    assert_eq!(unsafe { ealie_instance_new_quantum_torus(2, 0, ptr::null(), 0, 0, &mut inst) }, EalieStatus::Ok);
    let path = CString::new("/nonexistent/dir/out.jsonl").unwrap();
    assert_eq!(unsafe { ealie_export(inst, path.as_ptr()) }, EalieStatus::Io);
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("out.jsonl");
    let c = CString::new(good.to_str().unwrap()).unwrap();
    assert_eq!(unsafe { ealie_export(inst, c.as_ptr()) }, EalieStatus::Ok);
    assert!(std::fs::read_to_string(good).unwrap().ends_with("}\n"));
    unsafe { ealie_instance_free(inst) };
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/ealie.h");
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", header]).output() else {
        eprintln!("no C compiler, skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

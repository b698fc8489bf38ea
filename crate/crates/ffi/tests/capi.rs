use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use sheffer_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { sheff_string_free(s) };
    out
}

fn last_error() -> String {
    let p = sheff_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn catalog(name: &str, order: usize) -> *mut SheffOperator {
    let name = CString::new(name).unwrap();
    let mut op = ptr::null_mut();
    assert_eq!(unsafe { sheff_catalog(name.as_ptr(), order, &mut op) }, SheffStatus::Ok);
    op
}

fn entry(op: *const SheffOperator, i: usize, k: usize) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sheff_entry(op, i, k, 0, 0, &mut s) }, SheffStatus::Ok);
    take(s)
}

#[test]
fn hermite_entries_and_inverse() {
    let h = catalog("hermite", 6);
    assert_eq!(entry(h, 0, 2), "-1/1");
    assert_eq!(entry(h, 1, 3), "-3/1");
    let mut inv = ptr::null_mut();
    assert_eq!(unsafe { sheff_inverse(h, &mut inv) }, SheffStatus::Ok);
    assert_eq!(entry(inv, 0, 2), "1/1");
    let mut prod = ptr::null_mut();
    assert_eq!(unsafe { sheff_mul(h, inv, &mut prod) }, SheffStatus::Ok);
    let id = catalog("identity", 6);
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(sheff_to_json(prod, &mut a), SheffStatus::Ok);
        assert_eq!(sheff_to_json(id, &mut b), SheffStatus::Ok);
    }
    assert_eq!(take(a), take(b));
    let (mut appell, mut umbral) = (false, true);
    assert_eq!(unsafe { sheff_membership(h, &mut appell, &mut umbral) }, SheffStatus::Ok);
    assert!(appell && !umbral);
    unsafe {
        for op in [h, inv, prod, id] {
            sheff_operator_free(op);
        }
    }
}

#[test]
fn json_round_trip_through_handles() {
    let t = catalog("touchard", 5);
    let mut doc = ptr::null_mut();
    assert_eq!(unsafe { sheff_to_json(t, &mut doc) }, SheffStatus::Ok);
    let doc = CString::new(take(doc)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { sheff_from_json(doc.as_ptr(), 1, 5, &mut back) }, SheffStatus::Ok);
    assert_eq!(entry(back, 2, 4), "7/1");
    let (mut dim, mut order) = (0, 0);
    assert_eq!(unsafe { sheff_shape(back, &mut dim, &mut order) }, SheffStatus::Ok);
    assert_eq!((dim, order), (1, 5));

    let mut wrong = ptr::null_mut();
    assert_eq!(unsafe { sheff_from_json(doc.as_ptr(), 1, 4, &mut wrong) }, SheffStatus::Domain);
    assert!(last_error().contains("context mismatch"));
    unsafe {
        sheff_operator_free(t);
        sheff_operator_free(back);
    }
}

#[test]
fn riordan_and_sequence() {
    let p = catalog("pascal", 4);
    let mut r = ptr::null_mut();
    assert_eq!(unsafe { sheff_riordan_json(p, &mut r) }, SheffStatus::Ok);
    let r: serde_json::Value = serde_json::from_str(&take(r)).unwrap();
    assert_eq!(r["kind"], "riordan");
    let h = catalog("hermite", 6);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sheff_sequence_json(h, 3, &mut s) }, SheffStatus::Ok);
    let s: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
    assert_eq!(s["components"][1]["terms"][0]["c"], "-3/1");
    assert_eq!(s["components"][3]["terms"][0]["c"], "1/1");
    unsafe {
        sheff_operator_free(p);
        sheff_operator_free(h);
    }
}

#[test]
fn errors_are_reported() {
    let mut op = ptr::null_mut();
    let name = CString::new("laguerre").unwrap();
    assert_eq!(unsafe { sheff_catalog(name.as_ptr(), 4, &mut op) }, SheffStatus::Domain);
    assert!(last_error().contains("laguerre"));
    assert!(op.is_null());
    assert_eq!(unsafe { sheff_catalog(ptr::null(), 4, &mut op) }, SheffStatus::NullPointer);
    let bad = CString::new("{not json").unwrap();
    assert_eq!(unsafe { sheff_from_json(bad.as_ptr(), 1, 4, &mut op) }, SheffStatus::Parse);
    let h = catalog("hermite", 3);
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { sheff_entry(h, 2, 1, 0, 0, &mut s) }, SheffStatus::OutOfRange);
    assert_eq!(unsafe { sheff_entry(h, 1, 2, 0, 0, ptr::null_mut()) }, SheffStatus::NullPointer);
    unsafe { sheff_operator_free(h) };
    assert_eq!(unsafe { sheff_catalog(name.as_ptr(), 0, ptr::null_mut()) }, SheffStatus::NullPointer);
}

#[test]
fn cli_entry_point() {
    let args: Vec<CString> = ["sequence", "hermite", "--order", "6", "--n", "3", "--format", "table"]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let argv: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut err, mut code): (*mut c_char, *mut c_char, c_int) = (ptr::null_mut(), ptr::null_mut(), -1);
    assert_eq!(unsafe { sheff_run(argv.as_ptr(), argv.len(), &mut out, &mut err, &mut code) }, SheffStatus::Ok);
    assert_eq!(code, 0);
    assert_eq!(take(out), "p_3 = z^3 - 3*z\n");
    assert_eq!(take(err), "");
}

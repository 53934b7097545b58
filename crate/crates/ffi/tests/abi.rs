use std::ffi::{c_char, CStr, CString};
use std::ptr;

use metabelian_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { mb_string_free(s) };
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mb_last_error()) }.to_str().unwrap().to_owned()
}

fn endo(images: &str, rank: usize) -> *mut MbEndo {
    let s = CString::new(images).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { mb_endo_parse(s.as_ptr(), rank, &mut e) }, MbStatus::Ok);
    e
}

#[test]
fn elements_and_brackets() {
    let a = CString::new("x1").unwrap();
    let b = CString::new("x2").unwrap();
    let (mut ea, mut eb, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(mb_element_parse(a.as_ptr(), 2, &mut ea), MbStatus::Ok);
        assert_eq!(mb_element_parse(b.as_ptr(), 2, &mut eb), MbStatus::Ok);
        let mut derived = true;
        assert_eq!(mb_element_is_derived(ea, &mut derived), MbStatus::Ok);
        assert!(!derived);
        assert_eq!(mb_element_bracket(ea, eb, &mut c), MbStatus::Ok);
        assert_eq!(mb_element_is_derived(c, &mut derived), MbStatus::Ok);
        assert!(derived);
        let mut s = ptr::null_mut();
        assert_eq!(mb_element_to_string(c, &mut s), MbStatus::Ok);
        assert!(take(s).contains("-y2"));
        mb_element_free(ea);
        mb_element_free(eb);
        mb_element_free(c);
    }
}

#[test]
fn error_codes_and_messages() {
    let bad = CString::new("[x1,").unwrap();
    let mut e = ptr::null_mut();
    unsafe {
        assert_eq!(mb_element_parse(bad.as_ptr(), 2, &mut e), MbStatus::Parse);
        assert!(e.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(mb_element_parse(ptr::null(), 2, &mut e), MbStatus::NullPointer);
        let mut d = false;
        assert_eq!(mb_element_is_derived(ptr::null(), &mut d), MbStatus::NullPointer);
        let x = CString::new("x5").unwrap();
        assert_eq!(mb_element_parse(x.as_ptr(), 2, &mut e), MbStatus::InvalidArgument);
        let ok = CString::new("x1").unwrap();
        assert_eq!(mb_element_parse(ok.as_ptr(), 2, &mut e), MbStatus::Ok);
        assert!(last_error().is_empty());
        mb_element_free(e);
        mb_element_free(ptr::null_mut());
        mb_string_free(ptr::null_mut());
    }
}

#[test]
fn inverse_compose_and_level() {
    let phi = endo("x1 + [[x1,[x2,x3]],x4]; x2; x3; x4", 4);
    unsafe {
        let mut lvl = 0;
        assert_eq!(mb_endo_iaut_level(phi, &mut lvl), MbStatus::Ok);
        assert_eq!(lvl, 3);
        let mut inv = ptr::null_mut();
        assert_eq!(mb_endo_inverse(phi, &mut inv), MbStatus::Ok);
        let mut id = ptr::null_mut();
        assert_eq!(mb_endo_compose(phi, inv, &mut id), MbStatus::Ok);
        let mut is_id = false;
        assert_eq!(mb_endo_is_identity(id, &mut is_id), MbStatus::Ok);
        assert!(is_id);
        assert_eq!(mb_endo_iaut_level(id, &mut lvl), MbStatus::Ok);
        assert_eq!(lvl, -1);
        for e in [phi, inv, id] {
            mb_endo_free(e);
        }
    }
}

#[test]
fn singular_map_reports_not_an_automorphism() {
    let phi = endo("x1; x1; x3", 3);
    let mut inv = ptr::null_mut();
    unsafe {
        assert_eq!(mb_endo_inverse(phi, &mut inv), MbStatus::NotAutomorphism);
        assert!(inv.is_null());
        assert!(last_error().contains("not an automorphism"));
        mb_endo_free(phi);
    }
}

#[test]
fn json_roundtrip_and_jacobian() {
    let phi = endo("x1 + [x1,x2]; x2", 2);
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(mb_endo_to_json(phi, &mut s), MbStatus::Ok);
        let json = CString::new(take(s)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(mb_endo_from_json(json.as_ptr(), &mut back), MbStatus::Ok);
        assert_eq!(mb_endo_jacobian_json(back, &mut s), MbStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["rows"], serde_json::json!([["-y2 + 1", "y1"], ["0", "1"]]));
        let garbage = CString::new("{").unwrap();
        let mut none = ptr::null_mut();
        assert_eq!(mb_endo_from_json(garbage.as_ptr(), &mut none), MbStatus::Parse);
        assert_eq!(mb_endo_parse(json.as_ptr(), 1, &mut none), MbStatus::InvalidArgument);
        mb_endo_free(phi);
        mb_endo_free(back);
    }
}

#[test]
fn replays() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(mb_replay_bn(3, &mut s), MbStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["residual_coefficient"], "λ21");
        assert_eq!(mb_replay_bn(1, &mut s), MbStatus::InvalidArgument);
        assert_eq!(mb_replay_oe(4, false, &mut s), MbStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v["s"], "z4z2z3 - z4z3z2");
        assert_eq!(mb_replay_oe(3, false, &mut s), MbStatus::InvalidArgument);
    }
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/metabelian.h");
    let src = include_str!("../src/lib.rs");
    let exports: Vec<&str> = src
        .split("extern \"C\" fn ")
        .skip(1)
        .map(|s| s.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 15);
    for f in exports {
        assert!(header.contains(&format!("{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct MbEndo MbEndo;"));
    assert!(header.contains("MB_STATUS_NOT_AUTOMORPHISM = 5"));
}

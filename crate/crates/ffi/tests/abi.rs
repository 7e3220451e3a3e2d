use std::ffi::{c_char, CStr, CString};
use std::ptr;

use fuskit_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

/// Takes ownership of a library string.
unsafe fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    fuskit_string_free(s);
    out
}

fn last_error() -> Option<String> {
    let p = fuskit_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

fn construct(spec: &str) -> *mut FuskitRing {
    let mut ring = ptr::null_mut();
    let status = unsafe { fuskit_ring_construct(cstr(spec).as_ptr(), &mut ring) };
    assert_eq!(status, FuskitStatus::Ok, "{:?}", last_error());
    ring
}

#[test]
fn construct_query_and_free() {
    let ring = construct("psu2_6");
    unsafe {
        let mut rank = 0;
        assert_eq!(fuskit_ring_rank(ring, &mut rank), FuskitStatus::Ok);
        assert_eq!(rank, 4);
        let mut label = ptr::null_mut();
        assert_eq!(fuskit_ring_label(ring, 2, &mut label), FuskitStatus::Ok);
        assert_eq!(take(label), "X");

        let mut n = 9;
        assert_eq!(fuskit_ring_structure_constant(ring, 2, 2, 3, &mut n), FuskitStatus::Ok);
        assert_eq!(n, 1);
        assert_eq!(fuskit_ring_structure_constant(ring, 1, 2, 2, &mut n), FuskitStatus::Ok);
        assert_eq!(n, 0);

        let (mut value, mut exact) = (0.0, ptr::null_mut());
        assert_eq!(fuskit_ring_fpdim(ring, 2, &mut value, &mut exact), FuskitStatus::Ok);
        assert!((value - (1.0 + 2f64.sqrt())).abs() < 1e-12);
        assert_eq!(take(exact), "1+1*sqrt(2)");

        let mut pass = false;
        let mut report = ptr::null_mut();
        assert_eq!(fuskit_ring_validate(ring, &mut pass, &mut report), FuskitStatus::Ok);
        assert!(pass);
        let report: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
        assert_eq!(report["pass"], true);
        assert_eq!(fuskit_ring_validate(ring, &mut pass, ptr::null_mut()), FuskitStatus::Ok);

        let mut json = ptr::null_mut();
        assert_eq!(fuskit_ring_classify_json(ring, &mut json), FuskitStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["type"]["k"], serde_json::json!([1, 1]));

        assert_eq!(fuskit_ring_grading_json(ring, &mut json), FuskitStatus::Ok);
        let g: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(g["trivial"], "1");
        fuskit_ring_free(ring);
    }
    assert_eq!(last_error(), None);
}

#[test]
fn json_round_trip_through_handles() {
    let ring = construct(r#"{"family":"fib_extension","group":{"type":"symmetric","n":3}}"#);
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(fuskit_ring_to_json(ring, &mut json), FuskitStatus::Ok);
        let text = take(json);
        let mut copy = ptr::null_mut();
        assert_eq!(fuskit_ring_from_json(cstr(&text).as_ptr(), &mut copy), FuskitStatus::Ok);
        assert_eq!(fuskit_ring_to_json(copy, &mut json), FuskitStatus::Ok);
        assert_eq!(take(json), text);
        fuskit_ring_free(copy);
        fuskit_ring_free(ring);
    }
}

#[test]
fn errors_set_status_and_message() {
    unsafe {
        let mut ring = ptr::null_mut();
        assert_eq!(fuskit_ring_from_json(cstr("{nope").as_ptr(), &mut ring), FuskitStatus::Parse);
        assert!(ring.is_null());
        assert!(last_error().unwrap().contains("ring file"));

        assert_eq!(fuskit_ring_construct(cstr("warp_drive(2)").as_ptr(), &mut ring), FuskitStatus::Parse);
        assert_eq!(fuskit_ring_construct(ptr::null(), &mut ring), FuskitStatus::NullArgument);
        assert_eq!(fuskit_ring_construct(cstr("fibonacci").as_ptr(), ptr::null_mut()), FuskitStatus::NullArgument);
        let bad_utf8 = [0xffu8, 0xfe, 0];
        assert_eq!(fuskit_ring_construct(bad_utf8.as_ptr().cast(), &mut ring), FuskitStatus::InvalidUtf8);

        let fib = construct("fibonacci");
        let mut n = 0;
        assert_eq!(fuskit_ring_structure_constant(fib, 0, 0, 2, &mut n), FuskitStatus::OutOfRange);
        assert!(last_error().unwrap().contains("out of range"));
        let mut rank = 0;
        assert_eq!(fuskit_ring_rank(ptr::null(), &mut rank), FuskitStatus::NullArgument);
        assert_eq!(fuskit_ring_rank(fib, ptr::null_mut()), FuskitStatus::NullArgument);

        let pointed = construct("pointed(Z5)");
        let mut json = ptr::null_mut();
        assert_eq!(fuskit_ring_classify_json(pointed, &mut json), FuskitStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(v["pointed"], true);
        assert_eq!(v["gng"], false);

        assert_eq!(fuskit_ring_rank(fib, &mut rank), FuskitStatus::Ok);
        assert_eq!(last_error(), None);
        fuskit_ring_free(pointed);
        fuskit_ring_free(fib);
        fuskit_ring_free(ptr::null_mut());
        fuskit_string_free(ptr::null_mut());
    }
}

#[test]
fn cosine_search() {
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(fuskit_cosine_search_json(25, &mut json), FuskitStatus::Ok);
        assert_eq!(take(json), r#"{"pairs":[[3,5]],"triples":[]}"#);
        assert_eq!(fuskit_cosine_search_json(3, &mut json), FuskitStatus::NotApplicable);
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut ring = ptr::null_mut();
        assert_eq!(fuskit_ring_from_json(cstr("[]").as_ptr(), &mut ring), FuskitStatus::Parse);
    }
    let other = std::thread::spawn(last_error).join().unwrap();
    assert_eq!(other, None);
    assert!(last_error().is_some());
}

#[test]
fn version_matches_package() {
    let v = unsafe { CStr::from_ptr(fuskit_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

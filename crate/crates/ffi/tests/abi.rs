use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use gbscert_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    gbs_string_free(s);
    out
}

unsafe fn last_error() -> String {
    let p = gbs_last_error();
    assert!(!p.is_null(), "expected an error message");
    CStr::from_ptr(p).to_str().unwrap().to_owned()
}

#[test]
fn version_and_sym_dim() {
    let v = unsafe { CStr::from_ptr(gbs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    assert_eq!(gbs_sym_dim(3, 2), 6);
    assert_eq!(gbs_sym_dim(2, 0), 1);
}

#[test]
fn nu_through_the_abi() {
    unsafe {
        let (mut dec, mut fac) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(gbs_nu(1, 2, &mut dec, &mut fac), GbsStatus::Ok);
        assert_eq!(take(dec), "2520");
        assert_eq!(take(fac), "2^3 * 3^2 * 5 * 7");
        assert_eq!(gbs_nu(1, 1, ptr::null_mut(), ptr::null_mut()), GbsStatus::Ok);
        assert_eq!(gbs_nu(0, 2, &mut dec, ptr::null_mut()), GbsStatus::InvalidInput);
        assert!(last_error().contains("r >= 1"));
    }
}

#[test]
fn problem_round_trip_and_run() {
    let text = c(r#"{"schema_version": 1, "d": 2, "e": 2, "r": 1,
        "pairing": [["1", "0"], ["0", "2"]],
        "A": [{"1,0": "1"}, {"0,1": "1"}], "B": [{"1,0": "1"}, {"0,1": "1"}]}"#);
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(gbs_problem_parse(text.as_ptr(), &mut p), GbsStatus::Ok);
        let mut json = ptr::null_mut();
        assert_eq!(gbs_problem_to_json(p, &mut json), GbsStatus::Ok);
        let canonical = take(json);
        let mut again = ptr::null_mut();
        let canonical_c = c(&canonical);
        assert_eq!(gbs_problem_parse(canonical_c.as_ptr(), &mut again), GbsStatus::Ok);
        gbs_problem_free(again);

        let (mut report, mut code) = (ptr::null_mut(), -1);
        let flags = GbsRunFlags { has_seed: true, seed: 5, ..GbsRunFlags::default() };
        assert_eq!(gbs_run(p, c("certificate").as_ptr(), &flags, &mut report, &mut code), GbsStatus::Ok);
        assert_eq!(code, 0);
        let first = take(report);
        assert!(first.contains("\"revalidated\": true"));
        assert_eq!(gbs_run(p, c("certificate").as_ptr(), &flags, &mut report, &mut code), GbsStatus::Ok);
        assert_eq!(take(report), first);

        let exhausted = GbsRunFlags { has_m_max: true, m_max: 0, ..GbsRunFlags::default() };
        assert_eq!(
            gbs_run(p, c("certificate").as_ptr(), &exhausted, &mut report, &mut code),
            GbsStatus::SearchExhausted
        );
        assert_eq!(code, 4);
        assert!(take(report).contains("search_exhausted"));

        assert_eq!(gbs_run(p, c("bogus").as_ptr(), ptr::null(), &mut report, &mut code), GbsStatus::InvalidInput);
        assert!(last_error().contains("unknown subcommand"));
        gbs_problem_free(p);
    }
}

#[test]
fn verification_failure_is_reported() {
    let text = c(r#"{"schema_version": 1, "trace": {"instances": [
        {"d": 1, "r": 1, "n": 3, "vdecs": [{"1": "2"}], "wdecs": [{"1": "3"}], "order": "m0 i0"}],
        "corrupt_coefficient": true}}"#);
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(gbs_problem_parse(text.as_ptr(), &mut p), GbsStatus::Ok);
        let (mut report, mut code) = (ptr::null_mut(), 0);
        assert_eq!(
            gbs_run(p, c("trace-verify").as_ptr(), ptr::null(), &mut report, &mut code),
            GbsStatus::VerificationFailed
        );
        assert_eq!(code, 3);
        assert!(take(report).contains("\"mismatched\": 1"));
        gbs_problem_free(p);
    }
}

#[test]
fn bad_arguments() {
    unsafe {
        let mut p = ptr::null_mut();
        assert_eq!(gbs_problem_parse(ptr::null(), &mut p), GbsStatus::NullPointer);
        assert_eq!(gbs_problem_parse(c("{}").as_ptr(), ptr::null_mut()), GbsStatus::InvalidInput);
        assert_eq!(gbs_problem_parse(c(r#"{"schema_version": 1}"#).as_ptr(), ptr::null_mut()), GbsStatus::NullPointer);
        let invalid = [0xffu8, 0xfe, 0];
        assert_eq!(gbs_problem_parse(invalid.as_ptr().cast(), &mut p), GbsStatus::Utf8);
        let mut s = ptr::null_mut();
        assert_eq!(gbs_problem_to_json(ptr::null(), &mut s), GbsStatus::NullPointer);
        assert!(last_error().contains("problem"));
        gbs_problem_free(ptr::null_mut());
        gbs_poly_free(ptr::null_mut());
        gbs_string_free(ptr::null_mut());
        assert_eq!(gbs_poly_degree(ptr::null()), 0);
    }
}

#[test]
fn polynomial_operators() {
    unsafe {
        let (mut x, mut y, mut prod, mut contracted) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(gbs_poly_parse(2, 1, c(r#"{"1,0": "1", "0,1": "1"}"#).as_ptr(), &mut x), GbsStatus::Ok);
        assert_eq!(gbs_poly_parse(2, 1, c(r#"{"1,0": "1", "0,1": "-1"}"#).as_ptr(), &mut y), GbsStatus::Ok);
        assert_eq!(gbs_poly_mul(x, y, &mut prod), GbsStatus::Ok);
        assert_eq!(gbs_poly_degree(prod), 2);
        let mut json = ptr::null_mut();
        assert_eq!(gbs_poly_to_json(prod, &mut json), GbsStatus::Ok);
        assert_eq!(take(json), r#"{"0,2":"-1","2,0":"1"}"#);
        // i(x1 + x2) on x1^2 - x2^2 with u = id is 2 x1 - 2 x2.
        let id = c(r#"[["1", "0"], ["0", "1"]]"#);
        assert_eq!(gbs_poly_contract(x, prod, id.as_ptr(), &mut contracted), GbsStatus::Ok);
        assert_eq!(gbs_poly_to_json(contracted, &mut json), GbsStatus::Ok);
        assert_eq!(take(json), r#"{"0,1":"-2","1,0":"2"}"#);
        let mut bad = ptr::null_mut();
        assert_eq!(gbs_poly_parse(2, 2, c(r#"{"1,0": "1"}"#).as_ptr(), &mut bad), GbsStatus::InvalidInput);
        assert!(bad.is_null());
        for h in [x, y, prod, contracted] {
            gbs_poly_free(h);
        }
    }
}

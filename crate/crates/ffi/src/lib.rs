//! C ABI over `gbscert`.
//!
//! Objects cross the boundary as opaque handles (`GbsProblem`, `GbsPoly`)
//! that the caller releases with the matching `*_free` function. Strings
//! returned to the caller are owned by it and released with
//! `gbs_string_free`. Every fallible call returns a `GbsStatus`; on failure
//! `gbs_last_error` describes the problem until the next call on the same
//! thread.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gbscert::cli::{self, Command, RunFlags};
use gbscert::problem::{pairing_from_json, poly_from_json, poly_to_json, ProblemFile};
use gbscert::scalar::format_factorization;
use gbscert::symops::conr_apply;
use gbscert::{Error, SymPoly};

/// Result of every fallible call. The first values coincide with the exit
/// codes of the command-line tool.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbsStatus {
    Ok = 0,
    InvalidInput = 2,
    VerificationFailed = 3,
    SearchExhausted = 4,
    NullPointer = 10,
    Utf8 = 11,
    Internal = 12,
}

impl From<&Error> for GbsStatus {
    fn from(e: &Error) -> Self {
        match e.exit_code() {
            3 => GbsStatus::VerificationFailed,
            4 => GbsStatus::SearchExhausted,
            _ => GbsStatus::InvalidInput,
        }
    }
}

/// A parsed problem file.
pub struct GbsProblem(ProblemFile);

/// A homogeneous polynomial with exact rational coefficients.
pub struct GbsPoly(SymPoly);

/// Optional overrides for `gbs_run`; fields are read only when the matching
/// `has_*` flag is set.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct GbsRunFlags {
    pub has_seed: bool,
    pub seed: u64,
    pub has_m_max: bool,
    pub m_max: usize,
    pub has_n_max: bool,
    pub n_max: usize,
    /// Worker threads; 0 means one.
    pub jobs: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Fail(GbsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(GbsStatus::from(&e), e.to_string())
    }
}

/// Runs `body`, recording failures and converting panics to `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> GbsStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GbsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error: the library panicked");
            GbsStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(GbsStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(GbsStatus::Utf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(GbsStatus::NullPointer, format!("{what} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String, what: &str) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(GbsStatus::Internal, "string contains a NUL byte".into()))?;
    write_out(out, c.into_raw(), what)
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(GbsStatus::NullPointer, format!("{what} is null")))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gbs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn gbs_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gbs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a JSON problem file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_problem_parse(json: *const c_char, out: *mut *mut GbsProblem) -> GbsStatus {
    guard(|| {
        let text = read_str(json, "json")?;
        let problem = ProblemFile::parse(text)?;
        write_out(out, Box::into_raw(Box::new(GbsProblem(problem))), "out")
    })
}

/// # Safety
/// `problem` must be null or a handle from `gbs_problem_parse`, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gbs_problem_free(problem: *mut GbsProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Canonical JSON form of a parsed problem.
///
/// # Safety
/// `problem` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_problem_to_json(problem: *const GbsProblem, out: *mut *mut c_char) -> GbsStatus {
    guard(|| {
        let p = borrow(problem, "problem")?;
        write_string(out, p.0.to_json(), "out")
    })
}

/// Runs a subcommand (`"trace-verify"`, `"nu"`, `"macaulay"`,
/// `"certificate"`, `"gbs"`, `"graph-eval"`) and returns its JSON report.
/// A report is produced even when the computation fails; `exit_code`
/// receives the command-line exit code and the return value mirrors it.
///
/// # Safety
/// `problem` must be a live handle, `command` a NUL-terminated string,
/// `flags` null or valid, and `report` and `exit_code` writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_run(
    problem: *const GbsProblem,
    command: *const c_char,
    flags: *const GbsRunFlags,
    report: *mut *mut c_char,
    exit_code: *mut i32,
) -> GbsStatus {
    let mut code = 0;
    let status = guard(|| {
        let p = borrow(problem, "problem")?;
        let cmd: Command = read_str(command, "command")?.parse()?;
        let f = flags.as_ref().copied().unwrap_or_default();
        let run_flags = RunFlags {
            seed: f.has_seed.then_some(f.seed),
            m_max: f.has_m_max.then_some(f.m_max),
            n_max: f.has_n_max.then_some(f.n_max),
            jobs: (f.jobs > 0).then_some(f.jobs),
        };
        if report.is_null() || exit_code.is_null() {
            return Err(Fail(GbsStatus::NullPointer, "report or exit_code is null".into()));
        }
        let rep = cli::run(cmd, &p.0, &run_flags);
        code = rep.exit_code;
        write_out(exit_code, rep.exit_code, "exit_code")?;
        write_string(report, rep.render(), "report")?;
        if let Some(msg) = rep.body.get("error").and_then(|e| e.get("message")).and_then(|m| m.as_str()) {
            set_error(msg);
        }
        Ok(())
    });
    match (status, code) {
        (GbsStatus::Ok, 2) => GbsStatus::InvalidInput,
        (GbsStatus::Ok, 3) => GbsStatus::VerificationFailed,
        (GbsStatus::Ok, 4) => GbsStatus::SearchExhausted,
        (s, _) => s,
    }
}

/// `ν(r, d)` in decimal and as a prime factorisation such as `2^3 * 3^2 * 5 * 7`.
/// Either output pointer may be null to skip it.
///
/// # Safety
/// Non-null output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_nu(
    r: usize,
    d: usize,
    decimal: *mut *mut c_char,
    factorization: *mut *mut c_char,
) -> GbsStatus {
    guard(|| {
        if r == 0 || d == 0 {
            return Err(Fail(GbsStatus::InvalidInput, "nu needs r >= 1 and d >= 1".into()));
        }
        if !decimal.is_null() {
            write_string(decimal, gbscert::macaulay::nu(r, d).to_string(), "decimal")?;
        }
        if !factorization.is_null() {
            let f = format_factorization(&gbscert::macaulay::nu_factored(r, d));
            write_string(factorization, f, "factorization")?;
        }
        Ok(())
    })
}

/// `dim S^n` of a `d`-dimensional space.
#[no_mangle]
pub extern "C" fn gbs_sym_dim(d: usize, n: usize) -> usize {
    gbscert::sym_dim(d, n)
}

/// Parses a form of the given degree from a JSON object such as
/// `{"2,0": "1", "1,1": "-1/2"}`.
///
/// # Safety
/// `terms_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_poly_parse(
    dim: usize,
    degree: usize,
    terms_json: *const c_char,
    out: *mut *mut GbsPoly,
) -> GbsStatus {
    guard(|| {
        let p = poly_from_json(read_str(terms_json, "terms_json")?, dim, degree)?;
        write_out(out, Box::into_raw(Box::new(GbsPoly(p))), "out")
    })
}

/// # Safety
/// `poly` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gbs_poly_free(poly: *mut GbsPoly) {
    if !poly.is_null() {
        drop(Box::from_raw(poly));
    }
}

/// # Safety
/// `poly` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_poly_to_json(poly: *const GbsPoly, out: *mut *mut c_char) -> GbsStatus {
    guard(|| write_string(out, poly_to_json(&borrow(poly, "poly")?.0), "out"))
}

/// # Safety
/// `poly` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn gbs_poly_degree(poly: *const GbsPoly) -> usize {
    poly.as_ref().map_or(0, |p| p.0.degree())
}

/// Product `a * b`: the multiplication operator `m(a)` applied to `b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_poly_mul(a: *const GbsPoly, b: *const GbsPoly, out: *mut *mut GbsPoly) -> GbsStatus {
    guard(|| {
        let prod = borrow(a, "a")?.0.try_mul(&borrow(b, "b")?.0)?;
        write_out(out, Box::into_raw(Box::new(GbsPoly(prod))), "out")
    })
}

/// Contraction `i(w) p` through the pairing given as a JSON matrix of
/// `d x e` rationals, with `p` on `d` variables and `w` on `e`.
///
/// # Safety
/// `w` and `p` must be live handles, `pairing_json` a NUL-terminated
/// string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gbs_poly_contract(
    w: *const GbsPoly,
    p: *const GbsPoly,
    pairing_json: *const c_char,
    out: *mut *mut GbsPoly,
) -> GbsStatus {
    guard(|| {
        let pairing = pairing_from_json(read_str(pairing_json, "pairing_json")?)?;
        let res = conr_apply(&borrow(w, "w")?.0, &borrow(p, "p")?.0, &pairing)?;
        write_out(out, Box::into_raw(Box::new(GbsPoly(res))), "out")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_codes_follow_exit_codes() {
        assert_eq!(GbsStatus::from(&Error::Parse("x".into())), GbsStatus::InvalidInput);
        assert_eq!(GbsStatus::from(&Error::VerificationFailed("x".into())), GbsStatus::VerificationFailed);
        let exhausted = Error::SearchExhausted {
            max_length: 1,
            words_tried: 1,
            detail: String::new(),
        };
        assert_eq!(GbsStatus::from(&exhausted) as i32, exhausted.exit_code());
    }

    #[test]
    fn panics_become_internal_errors() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, GbsStatus::Internal);
        assert!(!gbs_last_error().is_null());
        assert_eq!(guard(|| Ok(())), GbsStatus::Ok);
        assert!(gbs_last_error().is_null());
    }
}

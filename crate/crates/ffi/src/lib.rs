//! C ABI over `biwkit`.
//!
//! Every fallible function returns a [`BiwkitStatus`]. On failure the message is
//! available from [`biwkit_last_error`] on the same thread. Strings handed out by
//! the library are owned by the caller and must be released with
//! [`biwkit_string_free`]; handles are released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use biwkit::cli;
use biwkit::exact::Polynomial;
use biwkit::polyfam::{self, DahaParameterSet, ParameterSet};
use biwkit::Error;

/// Status codes. The nonzero values 2, 3 and 4 agree with the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiwkitStatus {
    Ok = 0,
    VerificationFailed = 2,
    InvalidParameters = 3,
    NotConverged = 4,
    NullPointer = 10,
    InvalidUtf8 = 11,
    OutOfRange = 12,
    Panic = 13,
}

/// Which polynomial family a [`BiwkitFamily`] holds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiwkitFamilyKind {
    BannaiIto = 0,
    Modified = 1,
    NonsymWilson = 2,
}

/// Opaque parameter set (a, b, c, d).
pub struct BiwkitParams(ParameterSet);

/// Opaque list of polynomials of degrees 0..=n_max.
pub struct BiwkitFamily(Vec<Polynomial>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_for(e: &Error) -> BiwkitStatus {
    match cli::exit_code_for(e) {
        cli::EXIT_FAIL => BiwkitStatus::VerificationFailed,
        cli::EXIT_NOT_CONVERGED => BiwkitStatus::NotConverged,
        _ => BiwkitStatus::InvalidParameters,
    }
}

struct Fail(BiwkitStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_for(&e), format!("{}: {e}", e.kind()))
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BiwkitStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BiwkitStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            BiwkitStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(Fail(BiwkitStatus::NullPointer, "null string argument".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(BiwkitStatus::InvalidUtf8, "argument is not valid UTF-8".into()))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail(BiwkitStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn borrow<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| Fail(BiwkitStatus::NullPointer, "null handle".into()))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("values serialize")
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn biwkit_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn biwkit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Schema tag of the JSON documents, e.g. "biwkit/1". Static; do not free.
#[no_mangle]
pub extern "C" fn biwkit_schema() -> *const c_char {
    c"biwkit/1".as_ptr()
}

/// Parses "a,b,c,d" where each entry is an exact complex rational such as `1/2-3i`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn biwkit_params_parse(text: *const c_char, out: *mut *mut BiwkitParams) -> BiwkitStatus {
    guard(|| {
        let p = cli::parse_params(read_str(text)?)?;
        write_out(out, Box::into_raw(Box::new(BiwkitParams(p))))
    })
}

/// Parses a real quadruple "alpha,beta,gamma,delta" into a = alpha + i beta,
/// b = gamma + i delta, c = conj(a), d = conj(b).
///
/// # Safety
/// As for [`biwkit_params_parse`].
#[no_mangle]
pub unsafe extern "C" fn biwkit_params_parse_real(text: *const c_char, out: *mut *mut BiwkitParams) -> BiwkitStatus {
    guard(|| {
        let q = cli::parse_real_params(read_str(text)?)?;
        write_out(out, Box::into_raw(Box::new(BiwkitParams(q.to_parameter_set()))))
    })
}

/// Parses DAHA parameters "t0,t1,u0,u1" and maps them to (a, b, c, d).
///
/// # Safety
/// As for [`biwkit_params_parse`].
#[no_mangle]
pub unsafe extern "C" fn biwkit_params_parse_daha(text: *const c_char, out: *mut *mut BiwkitParams) -> BiwkitStatus {
    guard(|| {
        let t = cli::parse_daha_params(read_str(text)?)?;
        write_out(out, Box::into_raw(Box::new(BiwkitParams(t.to_bi()))))
    })
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn biwkit_params_free(p: *mut BiwkitParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parameters as JSON `{"a":{"re","im"},...}` with exact rational strings.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn biwkit_params_to_json(p: *const BiwkitParams, out: *mut *mut c_char) -> BiwkitStatus {
    guard(|| {
        let p = borrow(p)?;
        write_out(out, into_c_string(json(&p.0)))
    })
}

/// Exact eigenvalue of degree `n` under L, as JSON `{"re","im"}`.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn biwkit_bi_eigenvalue(p: *const BiwkitParams, n: usize, out: *mut *mut c_char) -> BiwkitStatus {
    guard(|| {
        let p = borrow(p)?;
        write_out(out, into_c_string(json(&polyfam::bi_eigenvalue(n, &p.0))))
    })
}

/// Builds degrees 0..=n_max of the family named by a [`BiwkitFamilyKind`] value. The Wilson family uses the
/// DAHA parameters obtained from the handle's (a, b, c, d).
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn biwkit_family_new(
    p: *const BiwkitParams,
    kind: c_int,
    n_max: usize,
    out: *mut *mut BiwkitFamily,
) -> BiwkitStatus {
    guard(|| {
        let p = &borrow(p)?.0;
        let fam = match kind {
            k if k == BiwkitFamilyKind::BannaiIto as c_int => polyfam::bi_polynomials(n_max, p)?,
            k if k == BiwkitFamilyKind::Modified as c_int => polyfam::q_polynomials(n_max, p)?,
            k if k == BiwkitFamilyKind::NonsymWilson as c_int => {
                let t: DahaParameterSet = p.to_daha();
                polyfam::nonsym_wilson_family(n_max, &t)?
            }
            k => return Err(Fail(BiwkitStatus::OutOfRange, format!("unknown family kind {k}"))),
        };
        write_out(out, Box::into_raw(Box::new(BiwkitFamily(fam))))
    })
}

/// # Safety
/// `f` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn biwkit_family_free(f: *mut BiwkitFamily) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of polynomials held (n_max + 1). Returns 0 for a null handle.
///
/// # Safety
/// `f` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn biwkit_family_len(f: *const BiwkitFamily) -> usize {
    f.as_ref().map_or(0, |f| f.0.len())
}

/// Coefficients of the degree-`n` member as a JSON array in ascending powers.
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn biwkit_family_polynomial_json(
    f: *const BiwkitFamily,
    n: usize,
    out: *mut *mut c_char,
) -> BiwkitStatus {
    guard(|| {
        let f = borrow(f)?;
        let poly =
            f.0.get(n)
                .ok_or_else(|| Fail(BiwkitStatus::OutOfRange, format!("degree {n} exceeds n_max {}", f.0.len() - 1)))?;
        write_out(out, into_c_string(json(poly)))
    })
}

/// Runs the command-line driver on `argv[0..argc]` (argv[0] is the program
/// name) and returns its JSON document in `out_json`. The return value is the
/// exit code the binary would have produced; it is nonnegative for any run
/// that produced a document and -1 if an argument pointer was null or not UTF-8.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn biwkit_run(argc: c_int, argv: *const *const c_char, out_json: *mut *mut c_char) -> c_int {
    let mut code = -1;
    let status = guard(|| {
        if argv.is_null() || argc < 0 {
            return Err(Fail(BiwkitStatus::NullPointer, "null argv".into()));
        }
        let mut args = Vec::with_capacity(argc as usize);
        for i in 0..argc as usize {
            args.push(read_str(*argv.add(i))?.to_string());
        }
        if args.is_empty() {
            args.push("biwkit".into());
        }
        let outcome = cli::run_args(args);
        write_out(out_json, into_c_string(outcome.json))?;
        code = outcome.exit_code;
        Ok(())
    });
    if status == BiwkitStatus::Ok {
        code
    } else {
        -1
    }
}

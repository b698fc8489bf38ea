//! C interface to the sheffer crate over rational coefficients.
//!
//! Operators live behind opaque `SheffOperator` handles. Every call returns
//! a `SheffStatus`; on failure `sheff_last_error` describes what went wrong.
//! Strings handed out by the library are released with `sheff_string_free`,
//! handles with `sheff_operator_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sheffer::json::Json;
use sheffer::opmatrix::OpMatrix;
use sheffer::sheffer::{catalog, is_appell, is_sheffer, is_umbral, riordan_transform, sheffer_inverse, sheffer_mul, ShefferOp};
use sheffer::{Context, Error, Rational, Scalar};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SheffStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    OutOfRange = 5,
    Panic = 6,
}

/// A Sheffer operator with rational coefficients.
pub struct SheffOperator {
    op: ShefferOp<Rational>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: SheffStatus, msg: impl Into<String>) -> SheffStatus {
    set_error(msg);
    status
}

fn lib_error(e: Error) -> SheffStatus {
    let status = if e.is_usage() { SheffStatus::Parse } else { SheffStatus::Domain };
    fail(status, e.to_string())
}

/// Runs `f`, turning a panic into `Panic` so it never unwinds into C.
fn guard(f: impl FnOnce() -> SheffStatus) -> SheffStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(SheffStatus::Panic, "internal panic"))
}

unsafe fn text<'a>(s: *const c_char) -> Result<&'a str, SheffStatus> {
    if s.is_null() {
        return Err(fail(SheffStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|_| fail(SheffStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn handle<'a>(p: *const SheffOperator) -> Result<&'a SheffOperator, SheffStatus> {
    p.as_ref().ok_or_else(|| fail(SheffStatus::NullPointer, "null operator handle"))
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> SheffStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            SheffStatus::Ok
        }
        Err(_) => fail(SheffStatus::Domain, "output contains a NUL byte"),
    }
}

unsafe fn put_operator(out: *mut *mut SheffOperator, op: ShefferOp<Rational>) -> SheffStatus {
    *out = Box::into_raw(Box::new(SheffOperator { op }));
    SheffStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! lib {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return lib_error(e),
        }
    };
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(SheffStatus::NullPointer, "null output pointer");
        })+
    };
}

/// Message for the last failed call on this thread, or NULL. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sheff_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sheff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `op` must be NULL or a handle returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sheff_operator_free(op: *mut SheffOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Named classical operator (identity, hermite, bernoulli, touchard,
/// falling_factorial, pascal) at dimension 1 and the given order.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_catalog(name: *const c_char, order: usize, out: *mut *mut SheffOperator) -> SheffStatus {
    guard(|| {
        nonnull!(out);
        let name = tri!(text(name));
        let ctx = lib!(Context::of::<Rational>(1, order));
        put_operator(out, ShefferOp::from_pair(lib!(catalog(name, &ctx))))
    })
}

/// Parses a `sheffer`, `spair` or `opmatrix` document at (dim, order).
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_from_json(
    json: *const c_char,
    dim: usize,
    order: usize,
    out: *mut *mut SheffOperator,
) -> SheffStatus {
    guard(|| {
        nonnull!(out);
        let json = tri!(text(json));
        let ctx = lib!(Context::of::<Rational>(dim, order));
        let doc: serde_json::Value = match serde_json::from_str(json) {
            Ok(v) => v,
            Err(e) => return fail(SheffStatus::Parse, format!("invalid JSON: {e}")),
        };
        let op = match doc.get("kind").and_then(|k| k.as_str()) {
            Some("spair") => ShefferOp::from_pair(lib!(Json::from_json(&ctx, &doc))),
            Some("opmatrix") => lib!(ShefferOp::from_matrix(lib!(OpMatrix::from_json(&ctx, &doc)))),
            _ => lib!(ShefferOp::from_json(&ctx, &doc)),
        };
        put_operator(out, op)
    })
}

/// The operator as a `sheffer` JSON document.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_to_json(op: *const SheffOperator, out: *mut *mut c_char) -> SheffStatus {
    guard(|| {
        nonnull!(out);
        let op = tri!(handle(op));
        put_string(out, op.op.to_json().to_string())
    })
}

/// The Riordan array of the operator as a `riordan` JSON document.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_riordan_json(op: *const SheffOperator, out: *mut *mut c_char) -> SheffStatus {
    guard(|| {
        nonnull!(out);
        let op = tri!(handle(op));
        put_string(out, riordan_transform(&op.op).to_json().to_string())
    })
}

/// # Safety
/// `op` must be a live handle; `dim` and `order` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_shape(op: *const SheffOperator, dim: *mut usize, order: *mut usize) -> SheffStatus {
    guard(|| {
        nonnull!(dim, order);
        let op = tri!(handle(op));
        *dim = op.op.context().dim();
        *order = op.op.context().order();
        SheffStatus::Ok
    })
}

/// Product `a·b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_mul(
    a: *const SheffOperator,
    b: *const SheffOperator,
    out: *mut *mut SheffOperator,
) -> SheffStatus {
    guard(|| {
        nonnull!(out);
        let (a, b) = (tri!(handle(a)), tri!(handle(b)));
        put_operator(out, lib!(sheffer_mul(&a.op, &b.op)))
    })
}

/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_inverse(op: *const SheffOperator, out: *mut *mut SheffOperator) -> SheffStatus {
    guard(|| {
        nonnull!(out);
        let op = tri!(handle(op));
        put_operator(out, lib!(sheffer_inverse(&op.op)))
    })
}

/// Entry (row, col) of block (i, k) as an exact "p/q" string.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_entry(
    op: *const SheffOperator,
    i: usize,
    k: usize,
    row: usize,
    col: usize,
    out: *mut *mut c_char,
) -> SheffStatus {
    guard(|| {
        nonnull!(out);
        let op = tri!(handle(op));
        if i > k || k > op.op.context().order() {
            return fail(SheffStatus::OutOfRange, format!("no block ({i},{k})"));
        }
        let block = op.op.matrix().block(i, k);
        let (rows, cols) = block.shape();
        if row >= rows || col >= cols {
            return fail(SheffStatus::OutOfRange, format!("block ({i},{k}) is {rows}x{cols}"));
        }
        put_string(out, block.get(row, col).render())
    })
}

/// p_n as a `polynomial` JSON document, along ξ = (1, ..., 1).
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_sequence_json(op: *const SheffOperator, n: usize, out: *mut *mut c_char) -> SheffStatus {
    guard(|| {
        nonnull!(out);
        let op = tri!(handle(op));
        let xi = vec![Rational::from_integer(1.into()); op.op.context().dim()];
        let poly = lib!(op.op.sequence(n, &xi));
        put_string(out, poly.to_json().to_string())
    })
}

/// Appell and umbral membership. Every handle is a Sheffer operator.
///
/// # Safety
/// `op` must be a live handle; `appell` and `umbral` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_membership(op: *const SheffOperator, appell: *mut bool, umbral: *mut bool) -> SheffStatus {
    guard(|| {
        nonnull!(appell, umbral);
        let op = tri!(handle(op));
        let m = op.op.matrix();
        debug_assert!(is_sheffer(m));
        *appell = is_appell(m);
        *umbral = is_umbral(m);
        SheffStatus::Ok
    })
}

/// Runs the command-line interface on `argv[0..argc]` (without the program
/// name). Output and exit code are returned instead of printed.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings; the output pointers
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn sheff_run(
    argv: *const *const c_char,
    argc: usize,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
    exit_code: *mut c_int,
) -> SheffStatus {
    guard(|| {
        nonnull!(out_stdout, out_stderr, exit_code);
        if argv.is_null() && argc > 0 {
            return fail(SheffStatus::NullPointer, "null argv");
        }
        let mut args = vec!["sheffer".to_string()];
        for j in 0..argc {
            args.push(tri!(text(*argv.add(j))).to_string());
        }
        let outcome = sheffer::cli::run(args);
        tri!(ok(put_string(out_stdout, outcome.stdout)));
        if let Err(s) = ok(put_string(out_stderr, outcome.stderr)) {
            sheff_string_free(*out_stdout);
            *out_stdout = ptr::null_mut();
            return s;
        }
        *exit_code = outcome.code;
        SheffStatus::Ok
    })
}

fn ok(s: SheffStatus) -> Result<(), SheffStatus> {
    if s == SheffStatus::Ok {
        Ok(())
    } else {
        Err(s)
    }
}

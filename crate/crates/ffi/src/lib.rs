//! C ABI over `superllt`.
//!
//! Polynomials cross the boundary as opaque [`SlltPoly`] handles owned by the
//! caller and released with [`sllt_poly_free`]. Strings returned by the
//! library are released with [`sllt_string_free`]. Every fallible function
//! returns an [`SlltStatus`]; on failure [`sllt_last_error`] describes the
//! problem for the calling thread. Panics never unwind into C: they are
//! caught and reported as [`SlltStatus::Panic`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use superllt::fock::{operator_polynomial, GeneratingKind};
use superllt::lattice::LatticeSystem;
use superllt::rmatrix::{verify_ybe, PairKind, RTypeAssignment, WeightVariant, YbeOptions};
use superllt::tableaux::{super_llt, AlphabetOrder};
use superllt::{Error, MPoly, Partition, SkewShape};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlltStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    BudgetExceeded = 4,
    Internal = 5,
    Panic = 6,
}

/// Computation route for [`sllt_compute`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlltRoute {
    Tableaux = 0,
    Lattice = 1,
    LatticeAlternate = 2,
    Operators = 3,
}

/// Opaque polynomial handle.
pub struct SlltPoly(MPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SlltStatus {
    match e {
        Error::BudgetExceeded(_) | Error::CapExceeded(_) => SlltStatus::BudgetExceeded,
        Error::Io(_) | Error::Fixture(_) | Error::Json(_) | Error::AssignmentNotUnique(_) => SlltStatus::Internal,
        _ => SlltStatus::InvalidInput,
    }
}

struct Fail(SlltStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, recording the error message and mapping panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SlltStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlltStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("panic: {msg}"));
            SlltStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(SlltStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `p` must be null or a valid nul-terminated string.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    unsafe { CStr::from_ptr(p) }
        .to_str()
        .map_err(|_| Fail(SlltStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// # Safety
/// `p` must be null (only when `len == 0`) or point to `len` readable values.
unsafe fn read_parts(p: *const u32, len: usize, what: &str) -> Result<Partition, Fail> {
    if len == 0 {
        return Ok(Partition::empty());
    }
    if p.is_null() {
        return Err(null(what));
    }
    let parts = unsafe { std::slice::from_raw_parts(p, len) };
    Ok(Partition::new(parts.to_vec())?)
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library strings contain no nul").into_raw()
}

/// Version of the library as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn sllt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sllt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Computes the super LLT polynomial of `outer/inner` for ribbon length `n`
/// and the letter order `order` (for example `"1,1',2"`).
///
/// # Safety
/// `outer` and `inner` point to `outer_len` and `inner_len` parts (either may
/// be null when its length is zero); `order` is a nul-terminated string;
/// `out` is writable. On success `*out` receives a handle to free with
/// [`sllt_poly_free`].
#[no_mangle]
pub unsafe extern "C" fn sllt_compute(
    n: u32,
    outer: *const u32,
    outer_len: usize,
    inner: *const u32,
    inner_len: usize,
    order: *const c_char,
    route: SlltRoute,
    out: *mut *mut SlltPoly,
) -> SlltStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let outer = unsafe { read_parts(outer, outer_len, "outer") }?;
        let inner = unsafe { read_parts(inner, inner_len, "inner") }?;
        let order: AlphabetOrder = unsafe { read_str(order, "order") }?.parse()?;
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()).into());
        }
        let shape = SkewShape::new(outer, inner)?;
        let p = match route {
            SlltRoute::Tableaux => super_llt(&shape, n, &order)?,
            SlltRoute::Lattice => LatticeSystem::original(&shape, n, &order)?.partition_function(),
            SlltRoute::LatticeAlternate => LatticeSystem::alternate(&shape, n, &order)?.partition_function(),
            SlltRoute::Operators => operator_polynomial(GeneratingKind::F, &shape, n, &order)?,
        };
        unsafe { *out = Box::into_raw(Box::new(SlltPoly(p))) };
        Ok(())
    })
}

/// Parses a polynomial from its JSON form.
///
/// # Safety
/// `json` is a nul-terminated string and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sllt_poly_from_json(json: *const c_char, out: *mut *mut SlltPoly) -> SlltStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let p = MPoly::from_json(unsafe { read_str(json, "json") }?)?;
        unsafe { *out = Box::into_raw(Box::new(SlltPoly(p))) };
        Ok(())
    })
}

/// Releases a polynomial. Null is ignored.
///
/// # Safety
/// `p` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sllt_poly_free(p: *mut SlltPoly) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}

/// # Safety
/// `p` is a live handle and `out` is writable. `*out` is freed with
/// [`sllt_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sllt_poly_to_json(p: *const SlltPoly, out: *mut *mut c_char) -> SlltStatus {
    guard(|| {
        let poly = unsafe { p.as_ref() }.ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { *out = to_c_string(poly.0.to_json()) };
        Ok(())
    })
}

/// Human-readable form, highest terms first.
///
/// # Safety
/// As for [`sllt_poly_to_json`].
#[no_mangle]
pub unsafe extern "C" fn sllt_poly_to_string(p: *const SlltPoly, out: *mut *mut c_char) -> SlltStatus {
    guard(|| {
        let poly = unsafe { p.as_ref() }.ok_or_else(|| null("poly"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        unsafe { *out = to_c_string(poly.0.to_string()) };
        Ok(())
    })
}

/// # Safety
/// `a` and `b` are live handles and `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn sllt_poly_equal(a: *const SlltPoly, b: *const SlltPoly, out: *mut bool) -> SlltStatus {
    guard(|| {
        let a = unsafe { a.as_ref() }.ok_or_else(|| null("a"))?;
        let b = unsafe { b.as_ref() }.ok_or_else(|| null("b"))?;
        let out = unsafe { out.as_mut() }.ok_or_else(|| null("out"))?;
        *out = a.0 == b.0;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sllt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Checks the star-triangle relation for one R-vertex kind (such as `"HH"`
/// or `"V~H"`) on all boundaries with `n` strands per side, writing the
/// number of checked boundaries and of failing ones. `printed` selects the
/// uncorrected mixed weights. `max_boundaries` of zero means no cap.
///
/// # Safety
/// `kind` is a nul-terminated string; `checked` and `failures` are writable.
#[no_mangle]
pub unsafe extern "C" fn sllt_verify_ybe(
    kind: *const c_char,
    n: u32,
    printed: bool,
    max_boundaries: u64,
    checked: *mut u64,
    failures: *mut u64,
) -> SlltStatus {
    guard(|| {
        let kind: PairKind = unsafe { read_str(kind, "kind") }?.parse()?;
        let checked = unsafe { checked.as_mut() }.ok_or_else(|| null("checked"))?;
        let failures = unsafe { failures.as_mut() }.ok_or_else(|| null("failures"))?;
        let opts = YbeOptions {
            variant: if printed {
                WeightVariant::Printed
            } else {
                WeightVariant::Corrected
            },
            max_boundaries: (max_boundaries > 0).then_some(max_boundaries),
            ..YbeOptions::default()
        };
        let r = verify_ybe(kind, n as usize, &RTypeAssignment::load()?, &opts)?;
        *checked = r.boundaries_checked as u64;
        *failures = r.failures.len() as u64;
        Ok(())
    })
}

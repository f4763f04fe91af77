//! C ABI for `shikit`.
//!
//! Every function returns a [`ShikitStatus`] (or a null handle) and writes
//! results through out-pointers. On failure a message is kept per thread and
//! can be read with [`shikit_last_error_message`]. Strings handed out by the
//! library must be released with [`shikit_string_free`]; handles with their
//! own `_free` function. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shikit::{BoundKind, DerivClosedForm, Error, EvalConfig, GridDefaults, Method, RationalBound};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShikitStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Overflow = 3,
    NonConvergence = 4,
    InvalidConfig = 5,
    OrderOutOfRange = 6,
    ToleranceNotMet = 7,
    UnknownCase = 8,
    InvalidGrid = 9,
    InvalidUtf8 = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShikitMethod {
    Series = 0,
    ClosedForm = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShikitBoundKind {
    Lower = 0,
    Upper = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShikitEvalConfig {
    pub rel_tol: f64,
    pub max_terms: usize,
    pub z_overflow_cap: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShikitEval {
    pub value: f64,
    pub abs_err_estimate: f64,
    pub terms_used: usize,
    pub method: ShikitMethod,
}

/// Opaque closed form of `Shi^(m)`.
pub struct ShikitClosedForm(DerivClosedForm);

/// Opaque rational `tanh` bound.
pub struct ShikitTanhBound(RationalBound);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> ShikitStatus {
    match e {
        Error::Overflow { .. } => ShikitStatus::Overflow,
        Error::NonConvergence { .. } => ShikitStatus::NonConvergence,
        Error::Domain(_) => ShikitStatus::Domain,
        Error::InvalidConfig(_) => ShikitStatus::InvalidConfig,
        Error::OrderOutOfRange { .. } => ShikitStatus::OrderOutOfRange,
        Error::ToleranceNotMet { .. } => ShikitStatus::ToleranceNotMet,
        Error::UnknownCase(_) => ShikitStatus::UnknownCase,
        Error::InvalidGrid(_) => ShikitStatus::InvalidGrid,
    }
}

fn fail(status: ShikitStatus, msg: impl Into<String>) -> ShikitStatus {
    set_last_error(msg.into());
    status
}

/// Runs `f`, converting errors and panics into status codes.
fn guard<F: FnOnce() -> Result<(), ShikitStatus>>(f: F) -> ShikitStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ShikitStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(ShikitStatus::Panic, "internal panic"),
    }
}

fn check<T>(r: shikit::Result<T>) -> Result<T, ShikitStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

fn nonnull<T>(p: *const T, name: &str) -> Result<(), ShikitStatus> {
    if p.is_null() {
        Err(fail(ShikitStatus::NullPointer, format!("`{name}` is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `cfg` must be null or point to a valid `ShikitEvalConfig`.
unsafe fn config_from(cfg: *const ShikitEvalConfig) -> EvalConfig {
    match cfg.as_ref() {
        None => EvalConfig::default(),
        Some(c) => EvalConfig { rel_tol: c.rel_tol, max_terms: c.max_terms, z_overflow_cap: c.z_overflow_cap },
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version, a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn shikit_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next library call on the same thread.
#[no_mangle]
pub extern "C" fn shikit_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn shikit_default_config() -> ShikitEvalConfig {
    let c = EvalConfig::default();
    ShikitEvalConfig { rel_tol: c.rel_tol, max_terms: c.max_terms, z_overflow_cap: c.z_overflow_cap }
}

/// # Safety
/// `out` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn shikit_sinhc(z: f64, out: *mut f64) -> ShikitStatus {
    guard(|| {
        nonnull(out, "out")?;
        *out = check(shikit::sinhc(z))?;
        Ok(())
    })
}

/// `cfg` may be null for the defaults.
///
/// # Safety
/// `cfg` must be null or valid; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn shikit_shi(z: f64, cfg: *const ShikitEvalConfig, out: *mut ShikitEval) -> ShikitStatus {
    shikit_shi_derivative(0, z, cfg, out)
}

/// `m`-th derivative of Shi, `0 <= m <= 64`. `cfg` may be null.
///
/// # Safety
/// `cfg` must be null or valid; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn shikit_shi_derivative(
    m: u32,
    z: f64,
    cfg: *const ShikitEvalConfig,
    out: *mut ShikitEval,
) -> ShikitStatus {
    guard(|| {
        nonnull(out, "out")?;
        let e = check(shikit::shi_derivative(m, z, &config_from(cfg)))?;
        *out = ShikitEval {
            value: e.value,
            abs_err_estimate: e.abs_err_estimate,
            terms_used: e.terms_used,
            method: match e.method {
                Method::Series => ShikitMethod::Series,
                Method::ClosedForm => ShikitMethod::ClosedForm,
            },
        };
        Ok(())
    })
}

/// Shi by adaptive quadrature of sinh(t)/t.
///
/// # Safety
/// `out` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn shikit_quadrature_shi(z: f64, tol: f64, out: *mut f64) -> ShikitStatus {
    guard(|| {
        nonnull(out, "out")?;
        *out = check(shikit::quadrature_shi(z, tol))?;
        Ok(())
    })
}

/// Closed form of `Shi^(m)`, `1 <= m <= 64`; null on error.
#[no_mangle]
pub extern "C" fn shikit_closed_form_new(m: u32) -> *mut ShikitClosedForm {
    let mut handle = ptr::null_mut();
    guard(|| {
        let cf = check(shikit::derivative_polynomials(m))?;
        handle = Box::into_raw(Box::new(ShikitClosedForm(cf)));
        Ok(())
    });
    handle
}

/// # Safety
/// `cf` must be null or a handle from `shikit_closed_form_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shikit_closed_form_free(cf: *mut ShikitClosedForm) {
    if !cf.is_null() {
        drop(Box::from_raw(cf));
    }
}

/// # Safety
/// `cf` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn shikit_closed_form_eval(cf: *const ShikitClosedForm, z: f64, out: *mut f64) -> ShikitStatus {
    guard(|| {
        nonnull(cf, "cf")?;
        nonnull(out, "out")?;
        *out = check((*cf).0.eval(z))?;
        Ok(())
    })
}

/// # Safety
/// `cf` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn shikit_closed_form_order(cf: *const ShikitClosedForm) -> u32 {
    cf.as_ref().map_or(0, |c| c.0.order)
}

/// Which polynomial to render.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShikitPolyPart {
    /// Coefficient list of the cosh multiplier, e.g. `[0,-2]`.
    Cosh = 0,
    /// Coefficient list of the sinh multiplier, e.g. `[2,0,1]`.
    Sinh = 1,
    /// Human-readable formula.
    Formula = 2,
}

/// Renders part of a closed form as a new string (free with
/// `shikit_string_free`); null on error.
///
/// # Safety
/// `cf` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn shikit_closed_form_string(cf: *const ShikitClosedForm, part: ShikitPolyPart) -> *mut c_char {
    let mut s = ptr::null_mut();
    guard(|| {
        nonnull(cf, "cf")?;
        let cf = &(*cf).0;
        s = into_c_string(match part {
            ShikitPolyPart::Cosh => cf.cosh_poly.to_list_string(),
            ShikitPolyPart::Sinh => cf.sinh_poly.to_list_string(),
            ShikitPolyPart::Formula => cf.formula(),
        });
        Ok(())
    });
    s
}

/// Rational tanh bound of order `m >= 3`; null on error.
#[no_mangle]
pub extern "C" fn shikit_tanh_bound_new(m: u32) -> *mut ShikitTanhBound {
    let mut handle = ptr::null_mut();
    guard(|| {
        let b = check(shikit::tanh_bound(m))?;
        handle = Box::into_raw(Box::new(ShikitTanhBound(b)));
        Ok(())
    });
    handle
}

/// # Safety
/// `b` must be null or a handle from `shikit_tanh_bound_new` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shikit_tanh_bound_free(b: *mut ShikitTanhBound) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn shikit_tanh_bound_eval(b: *const ShikitTanhBound, z: f64, out: *mut f64) -> ShikitStatus {
    guard(|| {
        nonnull(b, "b")?;
        nonnull(out, "out")?;
        *out = check(shikit::tanh_bound_eval(&(*b).0, z))?;
        Ok(())
    })
}

/// # Safety
/// `b` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn shikit_tanh_bound_kind(b: *const ShikitTanhBound, out: *mut ShikitBoundKind) -> ShikitStatus {
    guard(|| {
        nonnull(b, "b")?;
        nonnull(out, "out")?;
        *out = match (*b).0.kind {
            BoundKind::Lower => ShikitBoundKind::Lower,
            BoundKind::Upper => ShikitBoundKind::Upper,
        };
        Ok(())
    })
}

/// Numerator (`numerator = true`) or denominator coefficients as a new
/// string like `[0,3,0,1]`; null on error.
///
/// # Safety
/// `b` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn shikit_tanh_bound_poly(b: *const ShikitTanhBound, numerator: bool) -> *mut c_char {
    let mut s = ptr::null_mut();
    guard(|| {
        nonnull(b, "b")?;
        let b = &(*b).0;
        let p = if numerator { &b.numerator } else { &b.denominator };
        s = into_c_string(p.to_list_string());
        Ok(())
    });
    s
}

/// # Safety
/// `lower` and `upper` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn shikit_cosh_bounds(z: f64, lower: *mut f64, upper: *mut f64) -> ShikitStatus {
    guard(|| {
        nonnull(lower, "lower")?;
        nonnull(upper, "upper")?;
        let env = check(shikit::cosh_bounds(z))?;
        *lower = env.lower;
        *upper = env.upper;
        Ok(())
    })
}

/// # Safety
/// `lower` and `upper` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn shikit_shi_envelope(z: f64, lower: *mut f64, upper: *mut f64) -> ShikitStatus {
    guard(|| {
        nonnull(lower, "lower")?;
        nonnull(upper, "upper")?;
        let env = check(shikit::shi_envelope(z))?;
        *lower = env.lower;
        *upper = env.upper;
        Ok(())
    })
}

/// Runs verification on the default grids and returns the JSON report
/// document through `out_json` (free with `shikit_string_free`).
///
/// `case_id` selects one case; null or `"all"` runs the whole catalog.
/// `out_failures`, if non-null, receives the number of failed cases.
///
/// # Safety
/// `case_id` must be null or a NUL-terminated string; `out_json` must be
/// valid for writing; `out_failures` null or valid.
#[no_mangle]
pub unsafe extern "C" fn shikit_verify_json(
    case_id: *const c_char,
    seed: u64,
    out_json: *mut *mut c_char,
    out_failures: *mut usize,
) -> ShikitStatus {
    guard(|| {
        nonnull(out_json, "out_json")?;
        *out_json = ptr::null_mut();
        let ids: Vec<String> = if case_id.is_null() {
            Vec::new()
        } else {
            let s = CStr::from_ptr(case_id)
                .to_str()
                .map_err(|_| fail(ShikitStatus::InvalidUtf8, "case id is not UTF-8"))?;
            vec![s.to_string()]
        };
        let grid = GridDefaults { seed, ..GridDefaults::default() };
        let doc = check(shikit::verify_document(&ids, &grid, &EvalConfig::default()))?;
        if let Some(f) = out_failures.as_mut() {
            *f = doc.summary.fail;
        }
        *out_json = into_c_string(doc.to_json());
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn shikit_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

//! C interface to `ndalg`.
//!
//! Expressions and generalized functions are opaque heap handles owned by
//! the caller and released with the matching `*_free`. Every function
//! returns an [`NdStatus`]; on failure a message is available from
//! [`nd_last_error_message`] until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ndalg::cli::{verify_scenario, Scenario};
use ndalg::ndalgebra::Decision;
use ndalg::ode::{certify_generalized_solution, jump_magnitude};
use ndalg::symmetry::vertical_shift;
use ndalg::{
    make_rho, CheckProtocol, FirstOrderOde, GeneralizedFunction, IdealWitness, JumpAction, MultiJumpAction, SmoothExpr,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NdStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    CheckFailed = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NdDecision {
    Certified = 0,
    Refuted = 1,
    Inconclusive = 2,
}

impl From<Decision> for NdDecision {
    fn from(d: Decision) -> Self {
        match d {
            Decision::Certified => NdDecision::Certified,
            Decision::Refuted => NdDecision::Refuted,
            Decision::Inconclusive => NdDecision::Inconclusive,
        }
    }
}

/// Smooth expression handle.
pub struct NdExpr(SmoothExpr);

/// Generalized function handle.
pub struct NdGenFn(GeneralizedFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: NdStatus, msg: impl Into<String>) -> NdStatus {
    set_error(msg);
    status
}

fn guard(f: impl FnOnce() -> NdStatus) -> NdStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(NdStatus::Panic, "internal panic"))
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, NdStatus> {
    if p.is_null() {
        return Err(fail(NdStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(NdStatus::InvalidUtf8, "argument is not UTF-8"))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> NdStatus {
    *out = Box::into_raw(Box::new(value));
    NdStatus::Ok
}

macro_rules! nonnull {
    ($($p:expr),+) => {
        if $($p.is_null())||+ {
            return fail(NdStatus::NullPointer, "null pointer argument");
        }
    };
}

/// Message for the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn nd_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Parses an expression from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_expr_from_json(json: *const c_char, out: *mut *mut NdExpr) -> NdStatus {
    guard(|| {
        nonnull!(out);
        let text = match str_arg(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match serde_json::from_str::<SmoothExpr>(text) {
            Ok(e) => put(out, NdExpr(e)),
            Err(e) => fail(NdStatus::ParseError, e.to_string()),
        }
    })
}

/// The cutoff ρ.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_expr_rho(out: *mut *mut NdExpr) -> NdStatus {
    guard(|| {
        nonnull!(out);
        put(out, NdExpr(make_rho()))
    })
}

/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_expr_eval(e: *const NdExpr, x: f64, out: *mut f64) -> NdStatus {
    guard(|| {
        nonnull!(e, out);
        *out = (*e).0.eval(x);
        NdStatus::Ok
    })
}

/// `order`-th derivative as a new handle.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_expr_diff(e: *const NdExpr, order: u32, out: *mut *mut NdExpr) -> NdStatus {
    guard(|| {
        nonnull!(e, out);
        put(out, NdExpr((*e).0.diff_n(order)))
    })
}

/// # Safety
/// `e` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nd_expr_free(e: *mut NdExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Embeds a smooth expression as a constant sequence.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_gf_embed(e: *const NdExpr, out: *mut *mut NdGenFn) -> NdStatus {
    guard(|| {
        nonnull!(e, out);
        put(out, NdGenFn(GeneralizedFunction::embed((*e).0.clone())))
    })
}

/// `J_{a,h} W`.
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_gf_apply_jump(w: *const NdGenFn, a: f64, h: f64, out: *mut *mut NdGenFn) -> NdStatus {
    guard(|| {
        nonnull!(w, out);
        match JumpAction::new(a, h) {
            Ok(act) => put(out, NdGenFn(act.apply_gf(&(*w).0))),
            Err(e) => fail(NdStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// `J_{A,H} W` for `len` pairs `(locations[i], heights[i])`.
///
/// # Safety
/// `locations` and `heights` must point to `len` doubles each (may be NULL
/// when `len` is 0); `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_gf_apply_multi(
    w: *const NdGenFn,
    locations: *const f64,
    heights: *const f64,
    len: usize,
    out: *mut *mut NdGenFn,
) -> NdStatus {
    guard(|| {
        nonnull!(w, out);
        if len > 0 {
            nonnull!(locations, heights);
        }
        let pairs: Vec<(f64, f64)> = (0..len).map(|i| (*locations.add(i), *heights.add(i))).collect();
        match MultiJumpAction::new(pairs) {
            Ok(act) => put(out, NdGenFn(act.apply_gf(&(*w).0))),
            Err(e) => fail(NdStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// `(x, u) ↦ (x, u + epsilon)` applied to `W`.
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_gf_vertical_shift(w: *const NdGenFn, epsilon: f64, out: *mut *mut NdGenFn) -> NdStatus {
    guard(|| {
        nonnull!(w, out);
        if !epsilon.is_finite() {
            return fail(NdStatus::InvalidArgument, "epsilon must be finite");
        }
        put(out, NdGenFn(vertical_shift(epsilon, &(*w).0)))
    })
}

/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_gf_derive(w: *const NdGenFn, order: u32, out: *mut *mut NdGenFn) -> NdStatus {
    guard(|| {
        nonnull!(w, out);
        put(out, NdGenFn((*w).0.derive(order)))
    })
}

/// Value of the `nu`-th representative at `x`.
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_gf_eval(w: *const NdGenFn, nu: u32, x: f64, out: *mut f64) -> NdStatus {
    guard(|| {
        nonnull!(w, out);
        *out = (*w).0.eval_representative(nu, x);
        NdStatus::Ok
    })
}

/// # Safety
/// `w` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nd_gf_free(w: *mut NdGenFn) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

fn protocol(window_lo: f64, window_hi: f64, index_cap: u32) -> Result<CheckProtocol, NdStatus> {
    CheckProtocol::default()
        .with_window(window_lo, window_hi)
        .map(|p| p.with_index_cap(index_cap))
        .map_err(|e| fail(NdStatus::InvalidArgument, e.to_string()))
}

/// Persistent jump of `W` across `a`, checked on `[window_lo, window_hi]`
/// up to `index_cap`. `CheckFailed` if the estimate has not stabilized.
///
/// # Safety
/// `w` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_jump_magnitude(
    w: *const NdGenFn,
    a: f64,
    window_lo: f64,
    window_hi: f64,
    index_cap: u32,
    out: *mut f64,
) -> NdStatus {
    guard(|| {
        nonnull!(w, out);
        let proto = match protocol(window_lo, window_hi, index_cap) {
            Ok(p) => p,
            Err(s) => return s,
        };
        match jump_magnitude(&(*w).0, a, &proto) {
            Ok(j) => {
                *out = j;
                NdStatus::Ok
            }
            Err(e) => fail(NdStatus::CheckFailed, e.to_string()),
        }
    })
}

/// Checks `D W = F` modulo the ideal with singular set `gamma`.
///
/// # Safety
/// `gamma` must point to `gamma_len` doubles (may be NULL when 0); handles
/// must be live and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nd_certify_solution(
    w: *const NdGenFn,
    rhs: *const NdExpr,
    gamma: *const f64,
    gamma_len: usize,
    window_lo: f64,
    window_hi: f64,
    index_cap: u32,
    out: *mut NdDecision,
) -> NdStatus {
    guard(|| {
        nonnull!(w, rhs, out);
        if gamma_len > 0 {
            nonnull!(gamma);
        }
        let points = if gamma_len == 0 { Vec::new() } else { std::slice::from_raw_parts(gamma, gamma_len).to_vec() };
        let witness = match IdealWitness::new(points) {
            Ok(w) => w,
            Err(e) => return fail(NdStatus::InvalidArgument, e.to_string()),
        };
        let proto = match protocol(window_lo, window_hi, index_cap) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let ode = FirstOrderOde::new((*rhs).0.clone());
        *out = certify_generalized_solution(&(*w).0, &ode, &witness, &proto).decision.into();
        NdStatus::Ok
    })
}

/// Runs a scenario (same JSON as the CLI) and returns the report as a
/// newly allocated string, released with [`nd_string_free`].
/// `index_cap` of 0 keeps the scenario's own value.
///
/// # Safety
/// `json` must be a NUL-terminated string; `report` and `decision` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nd_verify_scenario_json(
    json: *const c_char,
    index_cap: u32,
    report: *mut *mut c_char,
    decision: *mut NdDecision,
) -> NdStatus {
    guard(|| {
        nonnull!(report, decision);
        let text = match str_arg(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let scenario = match Scenario::parse(text) {
            Ok(s) => s,
            Err(e) => return fail(NdStatus::ParseError, e.to_string()),
        };
        let cap = (index_cap > 0).then_some(index_cap);
        match verify_scenario(&scenario, cap) {
            Ok((value, d)) => {
                let s = serde_json::to_string_pretty(&value).expect("json");
                *report = CString::new(s).expect("no interior NUL").into_raw();
                *decision = d.into();
                NdStatus::Ok
            }
            Err(e) => fail(NdStatus::CheckFailed, e.to_string()),
        }
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn nd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

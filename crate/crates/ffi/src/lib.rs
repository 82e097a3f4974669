//! C ABI over `nk_elb`.
//!
//! Conventions:
//! * every fallible call returns an [`NkStatus`] and writes results through
//!   out-pointers, which are left untouched on failure;
//! * parameter sets and solved paths are opaque handles owned by the caller
//!   and released with the matching `*_free` function;
//! * the message for the most recent failure on the calling thread is
//!   available from [`nk_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use nk_elb::model::{
    d_bar, d_bar0, elb_inflation_threshold, p_bar, params_from_json, CoreParams, Overrides,
};
use nk_elb::multiplier::{multiplier_pn, MultiplierLimit};
use nk_elb::path::PathKind;
use nk_elb::regions::{classify_msv, classify_truncated, Stability, TruncatedKind};
use nk_elb::{
    multiplier_mixed, multiplier_pl, multiplier_pl_limit, solve_hypothetical_path, validate_params,
    ElbError, ModelParams, PathSolution, Regime, ShockSpec,
};

/// Result codes. `NK_STATUS_OK` is zero; everything else is an error.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParam = 2,
    InvalidShock = 3,
    NoBifurcation = 4,
    Contradiction = 5,
    OutOfRange = 6,
    NotMixedBand = 7,
    Inconclusive = 8,
    InvalidArgument = 9,
    Divergent = 10,
    Internal = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkRegime {
    Normal = 0,
    Elb = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkPathKind {
    PureNormal = 0,
    PureElb = 1,
    Mixed = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NkTruncatedKind {
    Pn = 0,
    Mixed = 1,
    Pl = 2,
}

/// The seven parameters without defaults.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NkCoreParams {
    pub sigma: f64,
    pub beta: f64,
    pub psi: f64,
    pub lambda: f64,
    pub m_xx: f64,
    pub m_xpi: f64,
    pub m_pipi: f64,
}

/// Every resolved parameter, defaults included.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NkParamValues {
    pub sigma: f64,
    pub beta: f64,
    pub psi: f64,
    pub lambda: f64,
    pub mu: f64,
    pub m_xx: f64,
    pub m_xpi: f64,
    pub m_pipi: f64,
    pub kappa: f64,
    pub eta: f64,
    pub c_bar: f64,
    pub d_max: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NkPeriodState {
    pub x: f64,
    pub pi: f64,
    pub i: f64,
    pub regime: NkRegime,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NkAssumptions {
    pub a1_ok: c_int,
    pub a2_ok: c_int,
    pub a1_bound: f64,
    pub a2_bound: f64,
}

/// `msv_count` is −1 when the label came from the truncated classifier.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NkRegionLabel {
    pub msv_count: c_int,
    pub kind: NkTruncatedKind,
    pub unstable: c_int,
}

/// Opaque parameter set.
pub struct NkParams {
    inner: ModelParams,
}

/// Opaque solved path.
pub struct NkPath {
    inner: PathSolution,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &ElbError) -> NkStatus {
    match e {
        ElbError::InvalidParam { .. } => NkStatus::InvalidParam,
        ElbError::InvalidShock { .. } => NkStatus::InvalidShock,
        ElbError::NoBifurcation => NkStatus::NoBifurcation,
        ElbError::Contradiction { .. }
        | ElbError::MixedStructure { .. }
        | ElbError::ClassifierMismatch { .. } => NkStatus::Contradiction,
        ElbError::ExitPeriodOutOfRange { .. } => NkStatus::OutOfRange,
        ElbError::NotMixedBand { .. } => NkStatus::NotMixedBand,
        ElbError::Inconclusive { .. } | ElbError::ThresholdNotReached { .. } => {
            NkStatus::Inconclusive
        }
        ElbError::Unsupported(_) | ElbError::InvalidArgument(_) => NkStatus::InvalidArgument,
    }
}

fn fail(status: NkStatus, msg: impl Into<String>) -> NkStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), NkStatus>) -> NkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NkStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(NkStatus::Internal, "internal panic"),
    }
}

fn lift<T>(r: nk_elb::Result<T>) -> Result<T, NkStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn params_ref<'a>(p: *const NkParams) -> Result<&'a ModelParams, NkStatus> {
    p.as_ref()
        .map(|h| &h.inner)
        .ok_or_else(|| fail(NkStatus::NullPointer, "null parameter handle"))
}

unsafe fn out_mut<'a, T>(p: *mut T) -> Result<&'a mut T, NkStatus> {
    p.as_mut()
        .ok_or_else(|| fail(NkStatus::NullPointer, "null output pointer"))
}

fn boxed_params(inner: ModelParams) -> *mut NkParams {
    Box::into_raw(Box::new(NkParams { inner }))
}

/// Message for the last failure on this thread, or NULL if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nk_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Standard calibration with defaults filled.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn nk_params_baseline(out: *mut *mut NkParams) -> NkStatus {
    guard(|| {
        *out_mut(out)? = boxed_params(ModelParams::baseline());
        Ok(())
    })
}

/// Builds a parameter set from the core values, filling every default.
///
/// # Safety
/// `core` must point to a valid `NkCoreParams`; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_params_new(
    core: *const NkCoreParams,
    out: *mut *mut NkParams,
) -> NkStatus {
    guard(|| {
        let c = core
            .as_ref()
            .ok_or_else(|| fail(NkStatus::NullPointer, "null core parameters"))?;
        let out = out_mut(out)?;
        let p = lift(ModelParams::with_defaults(
            CoreParams {
                sigma: c.sigma,
                beta: c.beta,
                psi: c.psi,
                lambda: c.lambda,
                m_xx: c.m_xx,
                m_xpi: c.m_xpi,
                m_pipi: c.m_pipi,
            },
            Overrides::default(),
        ))?;
        *out = boxed_params(p);
        Ok(())
    })
}

/// Parses the same JSON parameter object the CLI accepts.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nk_params_from_json(
    json: *const c_char,
    out: *mut *mut NkParams,
) -> NkStatus {
    guard(|| {
        if json.is_null() {
            return Err(fail(NkStatus::NullPointer, "null JSON string"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| fail(NkStatus::InvalidParam, e.to_string()))?;
        let out = out_mut(out)?;
        let p = lift(params_from_json(text))?;
        *out = boxed_params(p);
        Ok(())
    })
}

/// Releases a parameter handle. NULL is ignored.
///
/// # Safety
/// `p` must come from one of the `nk_params_*` constructors and not have
/// been freed already.
#[no_mangle]
pub unsafe extern "C" fn nk_params_free(p: *mut NkParams) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Copies out every resolved parameter.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_params_values(p: *const NkParams, out: *mut NkParamValues) -> NkStatus {
    guard(|| {
        let q = params_ref(p)?;
        *out_mut(out)? = NkParamValues {
            sigma: q.sigma,
            beta: q.beta,
            psi: q.psi,
            lambda: q.lambda,
            mu: q.mu,
            m_xx: q.m_xx,
            m_xpi: q.m_xpi,
            m_pipi: q.m_pipi,
            kappa: q.kappa,
            eta: q.eta,
            c_bar: q.c_bar,
            d_max: q.d_max,
        };
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_check(p: *const NkParams, out: *mut NkAssumptions) -> NkStatus {
    guard(|| {
        let r = lift(validate_params(params_ref(p)?))?;
        *out_mut(out)? = NkAssumptions {
            a1_ok: r.a1_ok as c_int,
            a2_ok: r.a2_ok as c_int,
            a1_bound: r.a1_bound,
            a2_bound: r.a2_bound,
        };
        Ok(())
    })
}

/// Bifurcation point `p̄`; `NK_STATUS_NO_BIFURCATION` if none in (0, 1).
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_p_bar(p: *const NkParams, out: *mut f64) -> NkStatus {
    guard(|| {
        let v = lift(p_bar(params_ref(p)?))?;
        *out_mut(out)? = v;
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_d_bar(p: *const NkParams, persistence: f64, out: *mut f64) -> NkStatus {
    guard(|| {
        let q = params_ref(p)?;
        if !(0.0..=1.0).contains(&persistence) {
            return Err(fail(NkStatus::InvalidArgument, "p must lie in [0, 1]"));
        }
        *out_mut(out)? = d_bar(q, persistence);
        Ok(())
    })
}

/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_d_bar0(p: *const NkParams, out: *mut f64) -> NkStatus {
    guard(|| {
        *out_mut(out)? = d_bar0(params_ref(p)?);
        Ok(())
    })
}

/// Inflation floor `−μ/ψ` below which the bound binds.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_inflation_floor(p: *const NkParams, out: *mut f64) -> NkStatus {
    guard(|| {
        *out_mut(out)? = elb_inflation_threshold(params_ref(p)?);
        Ok(())
    })
}

/// Labels one `(p, d)` cell. `msv != 0` selects the candidate-count
/// classifier, otherwise the truncated-horizon one.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_classify(
    p: *const NkParams,
    d: f64,
    persistence: f64,
    msv: c_int,
    out: *mut NkRegionLabel,
) -> NkStatus {
    guard(|| {
        let q = params_ref(p)?;
        let label = if msv != 0 {
            lift(classify_msv(q, d, persistence))?
        } else {
            classify_truncated(q, d, persistence)
        };
        *out_mut(out)? = NkRegionLabel {
            msv_count: label.msv_count.map_or(-1, c_int::from),
            kind: match label.truncated_kind {
                TruncatedKind::PN => NkTruncatedKind::Pn,
                TruncatedKind::Mixed => NkTruncatedKind::Mixed,
                TruncatedKind::PL => NkTruncatedKind::Pl,
            },
            unstable: (label.stability == Stability::Unstable) as c_int,
        };
        Ok(())
    })
}

/// Solves the low-state path for shock `(d, p, ell)`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_solve_path(
    p: *const NkParams,
    d: f64,
    persistence: f64,
    ell: usize,
    out: *mut *mut NkPath,
) -> NkStatus {
    guard(|| {
        let q = params_ref(p)?;
        let out = out_mut(out)?;
        let shock = lift(ShockSpec::new(d, persistence, ell))?;
        lift(shock.check_for(q))?;
        let inner = lift(solve_hypothetical_path(q, &shock))?;
        *out = Box::into_raw(Box::new(NkPath { inner }));
        Ok(())
    })
}

/// Releases a path handle. NULL is ignored.
///
/// # Safety
/// `path` must come from `nk_solve_path` and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn nk_path_free(path: *mut NkPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

/// Number of periods, 0 for a NULL handle.
///
/// # Safety
/// `path` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nk_path_len(path: *const NkPath) -> usize {
    path.as_ref().map_or(0, |h| h.inner.states.len())
}

/// # Safety
/// `path` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_path_state(
    path: *const NkPath,
    k: usize,
    out: *mut NkPeriodState,
) -> NkStatus {
    guard(|| {
        let h = path
            .as_ref()
            .ok_or_else(|| fail(NkStatus::NullPointer, "null path handle"))?;
        let s = h.inner.states.get(k).ok_or_else(|| {
            fail(
                NkStatus::OutOfRange,
                format!("period {k} outside 0..{}", h.inner.states.len()),
            )
        })?;
        *out_mut(out)? = NkPeriodState {
            x: s.x,
            pi: s.pi,
            i: s.i,
            regime: match s.regime {
                Regime::Normal => NkRegime::Normal,
                Regime::Elb => NkRegime::Elb,
            },
        };
        Ok(())
    })
}

/// Path kind; `switch_k` receives the last ELB period for mixed paths and
/// is left untouched otherwise. `switch_k` may be NULL.
///
/// # Safety
/// `path` must be a live handle, `kind` writable, `switch_k` NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn nk_path_kind(
    path: *const NkPath,
    kind: *mut NkPathKind,
    switch_k: *mut usize,
) -> NkStatus {
    guard(|| {
        let h = path
            .as_ref()
            .ok_or_else(|| fail(NkStatus::NullPointer, "null path handle"))?;
        let kind = out_mut(kind)?;
        *kind = match h.inner.kind {
            PathKind::PureNormal => NkPathKind::PureNormal,
            PathKind::PureElb => NkPathKind::PureElb,
            PathKind::Mixed { switch_k: k } => {
                if let Some(s) = switch_k.as_mut() {
                    *s = k;
                }
                NkPathKind::Mixed
            }
        };
        Ok(())
    })
}

/// Pure-ELB spending multiplier at duration `ell`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_multiplier_pl(
    p: *const NkParams,
    persistence: f64,
    ell: usize,
    out: *mut f64,
) -> NkStatus {
    guard(|| {
        let q = params_ref(p)?;
        check_p_ell(persistence, ell)?;
        *out_mut(out)? = multiplier_pl(q, persistence, ell);
        Ok(())
    })
}

/// Long-horizon pure-ELB multiplier; `NK_STATUS_DIVERGENT` at or above `p̄`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_multiplier_pl_limit(
    p: *const NkParams,
    persistence: f64,
    out: *mut f64,
) -> NkStatus {
    guard(|| {
        let q = params_ref(p)?;
        check_p_ell(persistence, 1)?;
        match multiplier_pl_limit(q, persistence) {
            MultiplierLimit::Converged { value } => {
                *out_mut(out)? = value;
                Ok(())
            }
            MultiplierLimit::Divergent => Err(fail(
                NkStatus::Divergent,
                format!("multiplier diverges at p = {persistence}"),
            )),
        }
    })
}

/// Pure-Normal spending multiplier at duration `ell`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_multiplier_pn(
    p: *const NkParams,
    persistence: f64,
    ell: usize,
    out: *mut f64,
) -> NkStatus {
    guard(|| {
        let q = params_ref(p)?;
        check_p_ell(persistence, ell)?;
        *out_mut(out)? = multiplier_pn(q, persistence, ell);
        Ok(())
    })
}

/// Mixed-path spending multiplier; requires `d̄(p) < d < d̄(0)`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nk_multiplier_mixed(
    p: *const NkParams,
    d: f64,
    persistence: f64,
    ell: usize,
    out: *mut f64,
) -> NkStatus {
    guard(|| {
        let q = params_ref(p)?;
        check_p_ell(persistence, ell)?;
        let v = lift(multiplier_mixed(q, d, persistence, ell))?;
        *out_mut(out)? = v;
        Ok(())
    })
}

fn check_p_ell(p: f64, ell: usize) -> Result<(), NkStatus> {
    if !(p.is_finite() && (0.0..1.0).contains(&p)) {
        return Err(fail(
            NkStatus::InvalidArgument,
            format!("p must lie in [0, 1), got {p}"),
        ));
    }
    if ell < 1 {
        return Err(fail(NkStatus::InvalidArgument, "ell must be ≥ 1"));
    }
    Ok(())
}

use std::ffi::{CStr, CString};
use std::ptr;

use nk_elb_ffi::*;

unsafe fn baseline() -> *mut NkParams {
    let mut h = ptr::null_mut();
    assert_eq!(nk_params_baseline(&mut h), NkStatus::Ok);
    h
}

unsafe fn last_error() -> String {
    let p = nk_last_error_message();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

#[test]
fn thresholds_through_handles() {
    unsafe {
        let h = baseline();
        let mut pb = 0.0;
        assert_eq!(nk_p_bar(h, &mut pb), NkStatus::Ok);
        assert!((pb - 0.75).abs() < 0.005);
        let (mut d0, mut dp) = (0.0, 0.0);
        assert_eq!(nk_d_bar0(h, &mut d0), NkStatus::Ok);
        assert_eq!(nk_d_bar(h, 0.0, &mut dp), NkStatus::Ok);
        assert!((d0 - dp).abs() <= 1e-14 * d0);
        let mut a = NkAssumptions {
            a1_ok: 0,
            a2_ok: 0,
            a1_bound: 0.0,
            a2_bound: 0.0,
        };
        assert_eq!(nk_check(h, &mut a), NkStatus::Ok);
        assert_eq!((a.a1_ok, a.a2_ok), (1, 1));
        nk_params_free(h);
    }
}

#[test]
fn core_constructor_fills_defaults() {
    unsafe {
        let core = NkCoreParams {
            sigma: 1.5,
            beta: 0.99,
            psi: 1.183,
            lambda: 0.1,
            m_xx: 1.0,
            m_xpi: 1.0,
            m_pipi: 0.74,
        };
        let mut h = ptr::null_mut();
        assert_eq!(nk_params_new(&core, &mut h), NkStatus::Ok);
        let mut v: NkParamValues = std::mem::zeroed();
        assert_eq!(nk_params_values(h, &mut v), NkStatus::Ok);
        assert!((v.mu - (1.0 / 0.99 - 1.0)).abs() < 1e-15);
        assert_eq!((v.kappa, v.eta, v.c_bar), (0.1, 1.0, 0.8));
        nk_params_free(h);

        let bad = NkCoreParams {
            sigma: -1.0,
            ..core
        };
        let mut h = ptr::null_mut();
        assert_eq!(nk_params_new(&bad, &mut h), NkStatus::InvalidParam);
        assert!(h.is_null());
        assert!(last_error().contains("sigma"));
    }
}

#[test]
fn json_constructor() {
    unsafe {
        let js = CString::new(
            r#"{"sigma":1.5,"beta":0.99,"psi":1.183,"lambda":0.1,"m_xx":1,"m_xpi":1,"m_pipi":0.74,"mu":0.0101}"#,
        )
        .unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(nk_params_from_json(js.as_ptr(), &mut h), NkStatus::Ok);
        let mut v: NkParamValues = std::mem::zeroed();
        nk_params_values(h, &mut v);
        assert_eq!(v.mu, 0.0101);
        nk_params_free(h);

        let js = CString::new(r#"{"sigma":1.5}"#).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(
            nk_params_from_json(js.as_ptr(), &mut h),
            NkStatus::InvalidParam
        );
    }
}

#[test]
fn path_accessors() {
    unsafe {
        let h = baseline();
        let mut path = ptr::null_mut();
        assert_eq!(nk_solve_path(h, 0.034, 0.6, 16, &mut path), NkStatus::Ok);
        assert_eq!(nk_path_len(path), 16);
        let mut kind = NkPathKind::PureNormal;
        let mut sk = usize::MAX;
        assert_eq!(nk_path_kind(path, &mut kind, &mut sk), NkStatus::Ok);
        assert_eq!(kind, NkPathKind::Mixed);
        let mut s: NkPeriodState = std::mem::zeroed();
        assert_eq!(nk_path_state(path, 0, &mut s), NkStatus::Ok);
        assert_eq!(s.regime, NkRegime::Elb);
        assert_eq!(nk_path_state(path, sk + 1, &mut s), NkStatus::Ok);
        assert_eq!(s.regime, NkRegime::Normal);
        assert_eq!(nk_path_state(path, 16, &mut s), NkStatus::OutOfRange);
        nk_path_free(path);

        let mut path = ptr::null_mut();
        assert_eq!(
            nk_solve_path(h, 0.01, 1.5, 4, &mut path),
            NkStatus::InvalidShock
        );
        assert!(path.is_null());
        nk_params_free(h);
    }
}

#[test]
fn multipliers() {
    unsafe {
        let h = baseline();
        let mut m = f64::NAN;
        assert_eq!(nk_multiplier_pl(h, 0.6, 1, &mut m), NkStatus::Ok);
        assert_eq!(m, 0.0);
        let mut lim = 0.0;
        assert_eq!(nk_multiplier_pl_limit(h, 0.6, &mut lim), NkStatus::Ok);
        assert_eq!(nk_multiplier_pl(h, 0.6, 2000, &mut m), NkStatus::Ok);
        assert!((m - lim).abs() < 1e-8 * lim);
        assert_eq!(
            nk_multiplier_pl_limit(h, 0.9, &mut lim),
            NkStatus::Divergent
        );
        assert_eq!(nk_multiplier_pn(h, 0.6, 10, &mut m), NkStatus::Ok);
        assert!(m < 0.0);
        assert_eq!(nk_multiplier_mixed(h, 0.05, 0.6, 30, &mut m), NkStatus::Ok);
        assert_eq!(
            nk_multiplier_mixed(h, 0.001, 0.6, 30, &mut m),
            NkStatus::NotMixedBand
        );
        assert!(last_error().contains("mixed band"));
        nk_params_free(h);
    }
}

#[test]
fn region_labels() {
    unsafe {
        let h = baseline();
        let mut l = NkRegionLabel {
            msv_count: 9,
            kind: NkTruncatedKind::Pn,
            unstable: 9,
        };
        assert_eq!(nk_classify(h, 0.19, 0.9, 1, &mut l), NkStatus::Ok);
        assert_eq!(
            (l.msv_count, l.kind, l.unstable),
            (0, NkTruncatedKind::Pl, 1)
        );
        assert_eq!(nk_classify(h, 0.05, 0.5, 0, &mut l), NkStatus::Ok);
        assert_eq!(
            (l.msv_count, l.kind, l.unstable),
            (-1, NkTruncatedKind::Mixed, 0)
        );
        nk_params_free(h);
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        let mut v = 0.0;
        assert_eq!(nk_p_bar(ptr::null(), &mut v), NkStatus::NullPointer);
        let h = baseline();
        assert_eq!(nk_p_bar(h, ptr::null_mut()), NkStatus::NullPointer);
        assert_eq!(nk_path_len(ptr::null()), 0);
        nk_params_free(ptr::null_mut());
        nk_path_free(ptr::null_mut());
        nk_params_free(h);
    }
}

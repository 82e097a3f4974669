mod common;

use common::*;
use nk_elb::model::{d_bar, d_bar0, p_bar};
use nk_elb::multiplier::{mixed_series, multiplier_pn, pl_series, pn_series};
use nk_elb::path::{solve_hypothetical_path, solve_with_regimes};
use nk_elb::regions::ell_bar;
use nk_elb::{
    ar2_coefficients, ar2_decompose, multiplier_mixed, multiplier_pl, multiplier_pl_limit,
    MultiplierLimit, ShockSpec,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn pl_matches_oracle_and_increases(q in params_strategy(), p in 0.01f64..0.99) {
        let s = pl_series(&q, p, 512);
        prop_assert_eq!(s.values[0], 0.0);
        // Increments are q·[(pA*)^ℓ]₁₂ > 0; once one drops below the
        // running sum's ulp the sum can only stay flat.
        let a = elb_matrix(&q);
        let pm = [[p * a[0][0], p * a[0][1]], [p * a[1][0], p * a[1][1]]];
        let mut col = mat_vec(&pm, [0.0, q.q_g()]);
        for w in s.values.windows(2) {
            if col[0] > 4.0 * f64::EPSILON * w[0].abs() {
                prop_assert!(w[1] > w[0]);
            } else {
                prop_assert!(w[1] >= w[0]);
            }
            col = mat_vec(&pm, col);
        }
        for ell in [1usize, 2, 7, 40, 64] {
            let want = geometric_oracle(&elb_matrix(&q), p, [0.0, q.q_g()], ell)[0];
            prop_assert!(rel_err(multiplier_pl(&q, p, ell), want) < 1e-10);
        }
    }

    #[test]
    fn ar2_reproduces_pl(q in params_strategy(), p in 0.0f64..0.99) {
        let c = ar2_coefficients(&q, p);
        let (mut m0, mut m1) = (0.0, 0.0);
        for ell in 2..=40 {
            let m2 = c.tau_star * m1 - c.delta_star * m0 + c.c_star;
            let direct = multiplier_pl(&q, p, ell);
            prop_assert!((m2 - direct).abs() <= 1e-10 * direct.abs().max(q.q_g() * 1e-6));
            m0 = m1;
            m1 = m2;
        }
    }

    // The Normal-regime limit is proportional to σ(p·m_xπ − ψ), so the sign
    // claim needs ψ ≥ m_xπ; the Taylor-principle bound guarantees that only
    // when m_xx = 1.
    #[test]
    fn pn_is_nonpositive(
        q in params_strategy().prop_filter("psi below m_xpi", |q| q.psi >= q.m_xpi),
        p in 0.0f64..0.99,
    ) {
        for v in pn_series(&q, p, 512).values {
            prop_assert!(v <= 0.0);
        }
    }

    #[test]
    fn pl_limit_agreement(q in params_with_bifurcation(), t in 0.0f64..0.95) {
        let p = t * p_bar(&q).unwrap();
        let lim = match multiplier_pl_limit(&q, p) {
            MultiplierLimit::Converged { value } => value,
            MultiplierLimit::Divergent => unreachable!(),
        };
        let oracle = q.q_g() * p * q.sigma * q.m_xpi / oracle_f(&q, p);
        prop_assert!(rel_err(lim, oracle) < 1e-12 || (lim == 0.0 && oracle == 0.0));
        prop_assert!((multiplier_pl(&q, p, 2000) - lim).abs() <= 1e-8 * lim.abs());
    }

    #[test]
    fn mixed_single_sign_change(q in params_strategy(), p in 0.0f64..0.99, t in 0.02f64..0.98) {
        let d = d_bar(&q, p) + t * (d_bar0(&q) - d_bar(&q, p));
        let s = mixed_series(&q, d, p, 512).unwrap();
        let changes = s.values.windows(2).filter(|w| (w[0] > 0.0) != (w[1] > 0.0)).count();
        prop_assert!(changes <= 1);
        if let Some(lp) = s.ell_plus {
            for ell in 1..=512 {
                prop_assert_eq!(s.at(ell) > 0.0, ell >= lp);
            }
        }
    }

    #[test]
    fn mixed_closed_form_matches_series(q in params_strategy(), p in 0.0f64..0.99, t in 0.02f64..0.98) {
        let d = d_bar(&q, p) + t * (d_bar0(&q) - d_bar(&q, p));
        let s = mixed_series(&q, d, p, 200).unwrap();
        for ell in [1usize, 2, 3, 5, 10, 50, 200] {
            let m = multiplier_mixed(&q, d, p, ell).unwrap();
            prop_assert!((m - s.at(ell)).abs() <= 1e-10 * m.abs().max(q.q_g() * 1e-3));
        }
        if let Some(lb) = s.ell_bar {
            for ell in 1..lb.min(200) {
                prop_assert_eq!(s.at(ell), multiplier_pn(&q, p, ell));
            }
        }
    }

    #[test]
    fn stitching_matches_finite_difference(q in params_strategy(), p in 0.05f64..0.99, t in 0.05f64..0.95) {
        let d = d_bar(&q, p) + t * (d_bar0(&q) - d_bar(&q, p));
        let lb = ell_bar(&q, d, p, 512);
        prop_assume!(lb.is_some());
        let lb = lb.unwrap();
        let shock = ShockSpec::new(d, p, lb).unwrap();
        let regimes = solve_hypothetical_path(&q, &shock).unwrap().regimes();
        let h = 1e-6 * q.q_g();
        let up = solve_with_regimes(&q, &shock, h, &regimes).unwrap()[0].x();
        let dn = solve_with_regimes(&q, &shock, -h, &regimes).unwrap()[0].x();
        let fd = (up - dn) / (2.0 * h);
        let m = multiplier_mixed(&q, d, p, lb).unwrap();
        // Central differences lose about ε·|x|/h to cancellation.
        let level = solve_with_regimes(&q, &shock, 0.0, &regimes).unwrap()[0].max_abs();
        let roundoff = 8.0 * f64::EPSILON * level / h;
        prop_assert!((fd - m).abs() <= 1e-6 * m.abs() + roundoff, "fd {fd} m {m}");
    }

    #[test]
    fn modal_reconstruction(q in params_strategy(), p in 0.05f64..0.99) {
        let s = pl_series(&q, p, 60);
        let dec = ar2_decompose(&s, &q, p).unwrap();
        for ell in 1..=60 {
            let r = dec.reconstruct(ell);
            prop_assert!((r - s.at(ell)).abs() <= 1e-8 * s.at(ell).abs().max(q.q_g()));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn pn_limit_sign_follows_psi_vs_m_xpi(q in params_strategy(), p in 0.01f64..0.99) {
        let MultiplierLimit::Converged { value } = nk_elb::multiplier::multiplier_pn_limit(&q, p) else {
            panic!("Normal regime is stable");
        };
        let gap = p * q.m_xpi - q.psi;
        prop_assume!(gap.abs() > 1e-6);
        prop_assert_eq!(value > 0.0, gap > 0.0);
    }
}

#[test]
fn constant_series_has_trivial_modes() {
    let q = nk_elb::ModelParams::baseline();
    let s = pl_series(&q, 0.0, 10);
    let dec = ar2_decompose(&s, &q, 0.0).unwrap();
    assert_eq!((dec.r1, dec.r2, dec.b1, dec.b2), (0.0, 0.0, 0.0, 0.0));
}

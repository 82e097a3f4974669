//! Impact consumption multipliers of government spending.
//!
//! Spending `g` shares the demand shock's truncation date. Within a fixed
//! regime pattern the impact state is linear in `g`, so each multiplier is
//! the first component of a geometric sum applied to the regime's spending
//! loading `f_g`.

use serde::{Deserialize, Serialize};

use crate::error::{ElbError, Result};
use crate::linalg::{geometric_sum_vec, mat_pow, quadratic_roots, Eigenvalues, Mat2, Vec2};
use crate::model::{d_bar, d_bar0, f_of_p, p_bar, ModelParams};
use crate::path::RegimePair;
use crate::regions::ell_bar;

/// Long-horizon behaviour of a multiplier series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MultiplierLimit {
    Converged { value: f64 },
    Divergent,
}

fn below_bifurcation(params: &ModelParams, p: f64) -> bool {
    match p_bar(params) {
        Ok(pb) => p < pb,
        Err(_) => true,
    }
}

/// Pure-ELB multiplier `q_g · [Σ_{i<ℓ} (pA*)ⁱ]₁₂`.
pub fn multiplier_pl(params: &ModelParams, p: f64, ell: usize) -> f64 {
    let sys = RegimePair::new(params);
    geometric_sum_vec(&sys.elb.m.scale(p), sys.elb.f_g, ell).x()
}

/// `q_g·pσm_xπ / F(p)` below the bifurcation, divergent at or above it.
pub fn multiplier_pl_limit(params: &ModelParams, p: f64) -> MultiplierLimit {
    if below_bifurcation(params, p) {
        MultiplierLimit::Converged {
            value: params.q_g() * p * params.sigma * params.m_xpi / f_of_p(params, p),
        }
    } else {
        MultiplierLimit::Divergent
    }
}

/// Coefficients of `m(ℓ+2) = τ*·m(ℓ+1) − δ*·m(ℓ) + c*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ar2Coefficients {
    pub tau_star: f64,
    pub delta_star: f64,
    /// Always `q_g·p·σ·m_xπ`, i.e. `F(p)·α*` with the `F(p)` factor cancelled.
    pub c_star: f64,
    /// Fixed point `α* = c*/F(p)`; `None` when `F(p) = 0` exactly.
    pub alpha_star: Option<f64>,
}

pub fn ar2_coefficients(params: &ModelParams, p: f64) -> Ar2Coefficients {
    let m = RegimePair::new(params).elb.m.scale(p);
    let c_star = params.q_g() * p * params.sigma * params.m_xpi;
    let f = f_of_p(params, p);
    Ar2Coefficients {
        tau_star: m.trace(),
        delta_star: m.det(),
        c_star,
        alpha_star: (f != 0.0).then(|| c_star / f),
    }
}

/// Normal-regime multiplier vector `Σ_{i<ℓ} (pA)ⁱ · f_g`.
pub fn multiplier_pn_vector(params: &ModelParams, p: f64, ell: usize) -> Vec2 {
    let sys = RegimePair::new(params);
    geometric_sum_vec(&sys.normal.m.scale(p), sys.normal.f_g, ell)
}

/// Pure-Normal multiplier, the first component of
/// [`multiplier_pn_vector`].
pub fn multiplier_pn(params: &ModelParams, p: f64, ell: usize) -> f64 {
    multiplier_pn_vector(params, p, ell).x()
}

/// `e1·(I − pA)⁻¹·f_g`.
pub fn multiplier_pn_limit(params: &ModelParams, p: f64) -> MultiplierLimit {
    let sys = RegimePair::new(params);
    match (Mat2::IDENTITY - sys.normal.m.scale(p)).solve(sys.normal.f_g) {
        Some(v) => MultiplierLimit::Converged { value: v.x() },
        None => MultiplierLimit::Divergent,
    }
}

fn check_mixed_band(params: &ModelParams, d: f64, p: f64) -> Result<()> {
    let lo = d_bar(params, p);
    let hi = d_bar0(params);
    if d > lo && d < hi {
        Ok(())
    } else {
        Err(ElbError::NotMixedBand {
            d,
            p,
            d_bar_p: lo,
            d_bar0: hi,
        })
    }
}

/// Mixed-path multiplier for `d̄(p) < d < d̄(0)`.
///
/// Below the duration threshold `ℓ̄` the path is pure Normal and so is the
/// multiplier. From `ℓ̄` on, the last `ℓ̄ − 1` periods are Normal and the
/// first `ℓ − ℓ̄ + 1` sit at the bound:
///
/// ```text
/// m(ℓ) = e1·(pA*)^{ℓ−ℓ̄+1}·G + e1·Σ_{i=0}^{ℓ−ℓ̄}(pA*)ⁱ·f_g*
/// ```
///
/// with `G` the Normal multiplier vector at duration `ℓ̄ − 1`.
pub fn multiplier_mixed(params: &ModelParams, d: f64, p: f64, ell: usize) -> Result<f64> {
    check_mixed_band(params, d, p)?;
    if ell < 1 {
        return Err(ElbError::InvalidArgument("ell must be ≥ 1".into()));
    }
    let lb = match ell_bar(params, d, p, ell) {
        Some(lb) => lb,
        None => return Ok(multiplier_pn(params, p, ell)),
    };
    let sys = RegimePair::new(params);
    let m_elb = sys.elb.m.scale(p);
    let inherited = multiplier_pn_vector(params, p, lb - 1);
    let inheritance = mat_pow(&m_elb, ell - lb + 1).mul_vec(inherited).x();
    let elb_part = geometric_sum_vec(&m_elb, sys.elb.f_g, ell - lb + 1).x();
    Ok(inheritance + elb_part)
}

/// Regime context a series was built for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "context", rename_all = "snake_case")]
pub enum RegimeContext {
    PN,
    PL,
    Mixed { d: f64 },
}

impl RegimeContext {
    pub fn label(&self) -> &'static str {
        match self {
            RegimeContext::PN => "PN",
            RegimeContext::PL => "PL",
            RegimeContext::Mixed { .. } => "M",
        }
    }
}

/// `m(ℓ)` for `ℓ = 1..=L`; `values[ℓ − 1]` holds `m(ℓ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplierSeries {
    pub regime_context: RegimeContext,
    pub p: f64,
    pub values: Vec<f64>,
    pub ell_bar: Option<usize>,
    pub ell_plus: Option<usize>,
    pub limit: MultiplierLimit,
}

impl MultiplierSeries {
    /// `m(ℓ)`, 1-based.
    pub fn at(&self, ell: usize) -> f64 {
        self.values[ell - 1]
    }

    /// Per-entry context tag: mixed series are Normal before `ℓ̄`.
    pub fn entry_label(&self, ell: usize) -> &'static str {
        match (self.regime_context, self.ell_bar) {
            (RegimeContext::Mixed { .. }, Some(lb)) if ell >= lb => "M",
            (RegimeContext::Mixed { .. }, _) => "PN",
            (ctx, _) => ctx.label(),
        }
    }
}

fn first_positive(values: &[f64]) -> Option<usize> {
    values.iter().position(|&v| v > 0.0).map(|i| i + 1)
}

pub fn pn_series(params: &ModelParams, p: f64, len: usize) -> MultiplierSeries {
    let sys = RegimePair::new(params);
    let m = sys.normal.m.scale(p);
    let mut s = Vec2::ZERO;
    let values = (0..len)
        .map(|_| {
            s = sys.normal.f_g + m.mul_vec(s);
            s.x()
        })
        .collect();
    MultiplierSeries {
        regime_context: RegimeContext::PN,
        p,
        values,
        ell_bar: None,
        ell_plus: None,
        limit: multiplier_pn_limit(params, p),
    }
}

pub fn pl_series(params: &ModelParams, p: f64, len: usize) -> MultiplierSeries {
    let sys = RegimePair::new(params);
    let m = sys.elb.m.scale(p);
    let mut s = Vec2::ZERO;
    let values: Vec<f64> = (0..len)
        .map(|_| {
            s = sys.elb.f_g + m.mul_vec(s);
            s.x()
        })
        .collect();
    MultiplierSeries {
        regime_context: RegimeContext::PL,
        p,
        ell_plus: first_positive(&values),
        values,
        ell_bar: Some(1),
        limit: multiplier_pl_limit(params, p),
    }
}

/// Mixed series for `ℓ = 1..=len`, built incrementally: the Normal
/// recursion runs until `ℓ̄`, then the ELB recursion starts from the
/// inherited Normal vector at `ℓ̄ − 1`.
pub fn mixed_series(params: &ModelParams, d: f64, p: f64, len: usize) -> Result<MultiplierSeries> {
    check_mixed_band(params, d, p)?;
    let lb = ell_bar(params, d, p, len);
    let sys = RegimePair::new(params);
    let m_n = sys.normal.m.scale(p);
    let m_z = sys.elb.m.scale(p);
    let mut s = Vec2::ZERO;
    let mut values = Vec::with_capacity(len);
    for ell in 1..=len {
        s = match lb {
            Some(lb) if ell >= lb => sys.elb.f_g + m_z.mul_vec(s),
            _ => sys.normal.f_g + m_n.mul_vec(s),
        };
        values.push(s.x());
    }
    Ok(MultiplierSeries {
        regime_context: RegimeContext::Mixed { d },
        p,
        ell_plus: first_positive(&values),
        values,
        ell_bar: lb,
        limit: multiplier_pl_limit(params, p),
    })
}

/// Smallest `ℓ ≤ ell_cap` with a positive mixed multiplier.
pub fn ell_plus(params: &ModelParams, d: f64, p: f64, ell_cap: usize) -> Result<Option<usize>> {
    Ok(mixed_series(params, d, p, ell_cap)?.ell_plus)
}

/// `m(ℓ) = α* + b1·r1^{ℓ−ℓ₀} + b2·r2^{ℓ−ℓ₀}` for `ℓ ≥ ℓ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModalDecomposition {
    pub r1: f64,
    pub r2: f64,
    pub b1: f64,
    pub b2: f64,
    pub alpha_star: f64,
    pub ell0: usize,
}

impl ModalDecomposition {
    pub fn reconstruct(&self, ell: usize) -> f64 {
        let n = (ell - self.ell0) as i32;
        self.alpha_star + self.b1 * self.r1.powi(n) + self.b2 * self.r2.powi(n)
    }
}

/// Splits a series into its fixed point and two geometric modes.
///
/// The roots come from `z² − τz + δ` of the governing matrix (`pA*` for PL
/// and mixed series past `ℓ̄`, `pA` for PN), the weights from the first two
/// values on the fitted range.
pub fn ar2_decompose(
    series: &MultiplierSeries,
    params: &ModelParams,
    p: f64,
) -> Result<ModalDecomposition> {
    let sys = RegimePair::new(params);
    let (rf, ell0) = match series.regime_context {
        RegimeContext::PN => (sys.normal, 1),
        RegimeContext::PL => (sys.elb, 1),
        RegimeContext::Mixed { .. } => match series.ell_bar {
            Some(lb) => (sys.elb, lb),
            None => {
                return Err(ElbError::Unsupported(
                    "mixed series never reaches its duration threshold".into(),
                ))
            }
        },
    };
    if series.values.len() < ell0 + 1 {
        return Err(ElbError::Unsupported(format!(
            "need values through ℓ = {}, have {}",
            ell0 + 1,
            series.values.len()
        )));
    }
    let m = rf.m.scale(p);
    let tail = &series.values[ell0 - 1..];
    let (r1, r2) = match quadratic_roots(m.trace(), m.det()) {
        Eigenvalues::Real { hi, lo } => (hi, lo),
        Eigenvalues::Complex { .. } => {
            return Err(ElbError::Unsupported("complex roots".into()));
        }
    };
    if r1 == r2 {
        let first = tail[0];
        if tail.iter().all(|&v| v == first) {
            return Ok(ModalDecomposition {
                r1,
                r2,
                b1: 0.0,
                b2: 0.0,
                alpha_star: first,
                ell0,
            });
        }
        return Err(ElbError::Unsupported("repeated root".into()));
    }
    let alpha_star = (Mat2::IDENTITY - m)
        .solve(rf.f_g)
        .ok_or_else(|| ElbError::Unsupported("fixed point undefined: det(I − M) = 0".into()))?
        .x();
    let y0 = tail[0] - alpha_star;
    let y1 = tail[1] - alpha_star;
    let b1 = (y1 - r2 * y0) / (r1 - r2);
    let b2 = y0 - b1;
    Ok(ModalDecomposition {
        r1,
        r2,
        b1,
        b2,
        alpha_star,
        ell0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ModelParams {
        ModelParams::baseline()
    }

    fn band_mid(params: &ModelParams, p: f64) -> f64 {
        0.5 * (d_bar(params, p) + d_bar0(params))
    }

    #[test]
    fn pl_first_terms() {
        let p = base();
        assert_eq!(multiplier_pl(&p, 0.6, 1), 0.0);
        // I + pA*, entry (1,2) = pσm_xπ.
        let two = multiplier_pl(&p, 0.6, 2);
        assert!((two - p.q_g() * 0.6 * 1.5).abs() < 1e-16);
        for ell in 1..20 {
            assert_eq!(multiplier_pl(&p, 0.0, ell), 0.0);
        }
    }

    #[test]
    fn pl_limit_cases() {
        let p = base();
        assert_eq!(
            multiplier_pl_limit(&p, 0.0),
            MultiplierLimit::Converged { value: 0.0 }
        );
        assert_eq!(multiplier_pl_limit(&p, 0.8), MultiplierLimit::Divergent);
        let MultiplierLimit::Converged { value } = multiplier_pl_limit(&p, 0.6) else {
            panic!()
        };
        assert!((multiplier_pl(&p, 0.6, 2000) - value).abs() < 1e-8 * value);
    }

    #[test]
    fn ar2_zero_persistence() {
        let c = ar2_coefficients(&base(), 0.0);
        assert_eq!((c.tau_star, c.delta_star, c.c_star), (0.0, 0.0, 0.0));
    }

    #[test]
    fn ar2_scaled_trace_det() {
        let p = base();
        let a = RegimePair::new(&p).elb.m;
        let c = ar2_coefficients(&p, 0.5);
        assert!((c.tau_star - 0.5 * a.trace()).abs() < 1e-15);
        assert!((c.delta_star - 0.25 * a.det()).abs() < 1e-15);
    }

    #[test]
    fn pn_first_and_zero_persistence() {
        let p = base();
        let first = -p.q_g() * p.sigma * p.psi / p.normal_denominator();
        assert!((multiplier_pn(&p, 0.7, 1) - first).abs() < 1e-17);
        for ell in 1..10 {
            assert_eq!(multiplier_pn(&p, 0.0, ell), multiplier_pn(&p, 0.0, 1));
        }
        let MultiplierLimit::Converged { value } = multiplier_pn_limit(&p, 0.7) else {
            panic!()
        };
        assert!(value < 0.0);
        assert!((multiplier_pn(&p, 0.7, 4000) - value).abs() < 1e-12);
    }

    #[test]
    fn mixed_matches_incremental_series() {
        let p = base();
        for &pp in &[0.4, 0.7, 0.9] {
            let d = band_mid(&p, pp);
            let s = mixed_series(&p, d, pp, 120).unwrap();
            let lb = s.ell_bar.unwrap();
            for ell in 1..=120 {
                let direct = multiplier_mixed(&p, d, pp, ell).unwrap();
                let tol = 1e-10 * direct.abs().max(1e-3);
                assert!((direct - s.at(ell)).abs() < tol, "p={pp} ell={ell}");
                if ell < lb {
                    assert_eq!(direct, multiplier_pn(&p, pp, ell));
                }
            }
        }
    }

    #[test]
    fn mixed_rejects_outside_band() {
        let p = base();
        assert!(matches!(
            multiplier_mixed(&p, 0.0, 0.5, 3),
            Err(ElbError::NotMixedBand { .. })
        ));
        assert!(multiplier_mixed(&p, d_bar0(&p), 0.5, 3).is_err());
        assert!(ell_plus(&p, d_bar0(&p) * 2.0, 0.5, 10).is_err());
    }

    #[test]
    fn decomposition_of_pl_series() {
        let p = base();
        let s = pl_series(&p, 0.6, 60);
        let dec = ar2_decompose(&s, &p, 0.6).unwrap();
        let MultiplierLimit::Converged { value } = multiplier_pl_limit(&p, 0.6) else {
            panic!()
        };
        assert!((dec.alpha_star - value).abs() < 1e-12 * value);
        for ell in 1..=60 {
            let v = s.at(ell);
            assert!((dec.reconstruct(ell) - v).abs() <= 1e-8 * v.abs().max(1e-12));
        }
    }

    #[test]
    fn decomposition_of_constant_series() {
        let p = base();
        let s = pl_series(&p, 0.0, 10);
        let dec = ar2_decompose(&s, &p, 0.0).unwrap();
        assert_eq!((dec.r1, dec.r2, dec.b1, dec.b2), (0.0, 0.0, 0.0, 0.0));
        assert_eq!(dec.alpha_star, 0.0);
    }

    #[test]
    fn decomposition_needs_two_values() {
        let p = base();
        let s = pl_series(&p, 0.5, 1);
        assert!(ar2_decompose(&s, &p, 0.5).is_err());
    }

    #[test]
    fn explosive_mode_positive_above_bifurcation() {
        let p = base();
        let pp = 0.85;
        let d = band_mid(&p, pp);
        let s = mixed_series(&p, d, pp, 200).unwrap();
        let dec = ar2_decompose(&s, &p, pp).unwrap();
        assert!(dec.r1 > 1.0);
        assert!(dec.b1 > 0.0);
        let lb = s.ell_bar.unwrap();
        for ell in lb..=200 {
            let v = s.at(ell);
            assert!((dec.reconstruct(ell) - v).abs() <= 1e-8 * v.abs().max(p.q_g()));
        }
    }
}

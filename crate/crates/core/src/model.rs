//! Parameters, per-regime reduced forms and the analytic thresholds.
//!
//! The structural block is
//!
//! ```text
//! x_t = m_xx E x_{t+1} − σ (i_t − m_xπ E π_{t+1}) − d_t
//! π_t = λ x_t + β m_ππ E π_{t+1} + κη(1−c̄) g_t
//! i_t = max(ψ π_t, −μ)
//! ```
//!
//! Each branch of the policy rule yields an affine law
//! `X_t = M·E_t X_{t+1} + f_d·d + f_const + f_g·g` with `X = [x, π]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ElbError, Result};
use crate::linalg::{Eigenvalues, Mat2, Vec2};

/// Output-gap selector `e1 = [1, 0]`.
pub const E1: Vec2 = Vec2::new(1.0, 0.0);
/// Inflation selector `e2 = [0, 1]`.
pub const E2: Vec2 = Vec2::new(0.0, 1.0);
/// Inflation selector used when reading impact inflation off a path.
pub const V2: Vec2 = E2;

/// Structural, behavioral and fiscal parameters.
///
/// Serialized as a flat JSON object. On input, `mu`, `kappa`, `eta`, `c_bar`
/// and `d_max` may be omitted and are filled with their defaults; any other
/// missing or unknown key is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ParamsRecord")]
pub struct ModelParams {
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

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsRecord {
    sigma: f64,
    beta: f64,
    psi: f64,
    lambda: f64,
    m_xx: f64,
    m_xpi: f64,
    m_pipi: f64,
    mu: Option<f64>,
    kappa: Option<f64>,
    eta: Option<f64>,
    c_bar: Option<f64>,
    d_max: Option<f64>,
}

impl TryFrom<ParamsRecord> for ModelParams {
    type Error = ElbError;

    fn try_from(r: ParamsRecord) -> Result<Self> {
        ModelParams::with_defaults(
            CoreParams {
                sigma: r.sigma,
                beta: r.beta,
                psi: r.psi,
                lambda: r.lambda,
                m_xx: r.m_xx,
                m_xpi: r.m_xpi,
                m_pipi: r.m_pipi,
            },
            Overrides {
                mu: r.mu,
                kappa: r.kappa,
                eta: r.eta,
                c_bar: r.c_bar,
                d_max: r.d_max,
            },
        )
    }
}

/// The seven parameters that have no default.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreParams {
    pub sigma: f64,
    pub beta: f64,
    pub psi: f64,
    pub lambda: f64,
    pub m_xx: f64,
    pub m_xpi: f64,
    pub m_pipi: f64,
}

/// Optional values for the defaultable parameters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Overrides {
    pub mu: Option<f64>,
    pub kappa: Option<f64>,
    pub eta: Option<f64>,
    pub c_bar: Option<f64>,
    pub d_max: Option<f64>,
}

impl ModelParams {
    /// Standard calibration: σ=1.5, β=0.99, ψ=1.183, λ=0.1, m_xx=1,
    /// m_xπ=1, m_ππ=0.74, with every other field defaulted.
    pub fn baseline() -> Self {
        Self::with_defaults(
            CoreParams {
                sigma: 1.5,
                beta: 0.99,
                psi: 1.183,
                lambda: 0.1,
                m_xx: 1.0,
                m_xpi: 1.0,
                m_pipi: 0.74,
            },
            Overrides::default(),
        )
        .expect("baseline calibration is valid")
    }

    /// Fills defaults: μ = 1/β − 1, κ = λ, η = 1, c̄ = 0.8,
    /// d_max = 2·d̄(0). Range-checks the result.
    pub fn with_defaults(core: CoreParams, o: Overrides) -> Result<Self> {
        check_finite("beta", core.beta)?;
        check_finite("lambda", core.lambda)?;
        let mut p = ModelParams {
            sigma: core.sigma,
            beta: core.beta,
            psi: core.psi,
            lambda: core.lambda,
            mu: o.mu.unwrap_or(1.0 / core.beta - 1.0),
            m_xx: core.m_xx,
            m_xpi: core.m_xpi,
            m_pipi: core.m_pipi,
            kappa: o.kappa.unwrap_or(core.lambda),
            eta: o.eta.unwrap_or(1.0),
            c_bar: o.c_bar.unwrap_or(0.8),
            d_max: 1.0,
        };
        p.d_max = match o.d_max {
            Some(v) => v,
            None => {
                p.check_ranges()?;
                2.0 * d_bar0(&p)
            }
        };
        p.check_ranges()?;
        Ok(p)
    }

    /// Field-level range validation; the first offending field is named.
    pub fn check_ranges(&self) -> Result<()> {
        let positive = [
            ("sigma", self.sigma),
            ("psi", self.psi),
            ("lambda", self.lambda),
            ("mu", self.mu),
            ("kappa", self.kappa),
            ("eta", self.eta),
            ("d_max", self.d_max),
        ];
        for (field, v) in [
            ("sigma", self.sigma),
            ("beta", self.beta),
            ("psi", self.psi),
            ("lambda", self.lambda),
            ("mu", self.mu),
            ("m_xx", self.m_xx),
            ("m_xpi", self.m_xpi),
            ("m_pipi", self.m_pipi),
            ("kappa", self.kappa),
            ("eta", self.eta),
            ("c_bar", self.c_bar),
            ("d_max", self.d_max),
        ] {
            check_finite(field, v)?;
        }
        for (field, v) in positive {
            if v <= 0.0 {
                return Err(range_err(field, v, "must be > 0"));
            }
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(range_err("beta", self.beta, "must lie in (0, 1)"));
        }
        if !(self.c_bar > 0.0 && self.c_bar < 1.0) {
            return Err(range_err("c_bar", self.c_bar, "must lie in (0, 1)"));
        }
        for (field, v) in [
            ("m_xx", self.m_xx),
            ("m_xpi", self.m_xpi),
            ("m_pipi", self.m_pipi),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(range_err(field, v, "must lie in (0, 1]"));
            }
        }
        Ok(())
    }

    /// Fiscal loading `q_g = κ·η·(1 − c̄)`.
    pub fn q_g(&self) -> f64 {
        self.kappa * self.eta * (1.0 - self.c_bar)
    }

    /// `1 + λσψ`, the Normal-regime normalizer.
    pub fn normal_denominator(&self) -> f64 {
        1.0 + self.lambda * self.sigma * self.psi
    }

    /// Policy-rule floor `−μ`.
    pub fn rate_floor(&self) -> f64 {
        -self.mu
    }
}

fn check_finite(field: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(range_err(field, v, "must be finite"))
    }
}

fn range_err(field: &'static str, v: f64, why: &str) -> ElbError {
    ElbError::InvalidParam {
        field,
        reason: format!("{why} (got {v})"),
    }
}

/// Demand shock: initial size `d`, persistence `p`, maximum low-state
/// duration `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShockSpec {
    pub d: f64,
    pub p: f64,
    pub ell: usize,
}

impl ShockSpec {
    pub fn new(d: f64, p: f64, ell: usize) -> Result<Self> {
        let s = ShockSpec { d, p, ell };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<()> {
        if !(self.d.is_finite() && self.d >= 0.0) {
            return Err(ElbError::InvalidShock {
                field: "d",
                reason: format!("must be finite and ≥ 0 (got {})", self.d),
            });
        }
        if !(self.p.is_finite() && (0.0..1.0).contains(&self.p)) {
            return Err(ElbError::InvalidShock {
                field: "p",
                reason: format!("must lie in [0, 1) (got {})", self.p),
            });
        }
        if self.ell < 1 {
            return Err(ElbError::InvalidShock {
                field: "ell",
                reason: "must be ≥ 1".into(),
            });
        }
        Ok(())
    }

    /// Range check plus `d ≤ d_max`.
    pub fn check_for(&self, params: &ModelParams) -> Result<()> {
        self.check()?;
        if self.d > params.d_max {
            return Err(ElbError::InvalidShock {
                field: "d",
                reason: format!("exceeds d_max = {} (got {})", params.d_max, self.d),
            });
        }
        Ok(())
    }
}

/// Branch of the policy rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Normal,
    Elb,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Normal => "normal",
            Regime::Elb => "elb",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Affine law `X_t = m·E_t X_{t+1} + f_d·d + f_const + f_g·g`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedForm {
    pub regime: Regime,
    pub m: Mat2,
    pub f_d: Vec2,
    pub f_const: Vec2,
    pub f_g: Vec2,
}

impl ReducedForm {
    /// Exogenous forcing `f_d·d + f_const + f_g·g`.
    pub fn forcing(&self, d: f64, g: f64) -> Vec2 {
        self.f_d.scale(d) + self.f_const + self.f_g.scale(g)
    }

    /// Applies the law to a given expectation.
    pub fn apply(&self, expectation: Vec2, d: f64, g: f64) -> Vec2 {
        self.m.mul_vec(expectation) + self.forcing(d, g)
    }
}

/// Builds the reduced form for one regime.
pub fn regime_system(params: &ModelParams, regime: Regime) -> ReducedForm {
    let ModelParams {
        sigma: s,
        beta: b,
        psi,
        lambda: l,
        mu,
        m_xx,
        m_xpi,
        m_pipi,
        ..
    } = *params;
    let q = params.q_g();
    match regime {
        Regime::Normal => {
            let k = 1.0 / params.normal_denominator();
            ReducedForm {
                regime,
                m: Mat2::new(
                    k * m_xx,
                    k * s * (m_xpi - psi * b * m_pipi),
                    k * l * m_xx,
                    k * (l * s * m_xpi + b * m_pipi),
                ),
                f_d: Vec2::new(-k, -k * l),
                f_const: Vec2::ZERO,
                f_g: Vec2::new(-k * q * s * psi, k * q),
            }
        }
        Regime::Elb => ReducedForm {
            regime,
            m: Mat2::new(m_xx, s * m_xpi, l * m_xx, l * s * m_xpi + b * m_pipi),
            f_d: Vec2::new(-1.0, -l),
            f_const: Vec2::new(s * mu, l * s * mu),
            f_g: Vec2::new(0.0, q),
        },
    }
}

/// Outcome of checking the two parameter restrictions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    /// `ψ < m_xπ / (β m_ππ)`: real eigenvalues of the Normal-regime matrix.
    pub a1_ok: bool,
    /// `ψ > m_xπ + (1 − m_xx)(β m_ππ − 1)/(λσ)`: Taylor principle.
    pub a2_ok: bool,
    pub a1_bound: f64,
    pub a2_bound: f64,
    pub eig_a: Eigenvalues,
    pub rho_a: f64,
    pub messages: Vec<String>,
}

impl AssumptionReport {
    pub fn all_ok(&self) -> bool {
        self.a1_ok && self.a2_ok
    }
}

/// Parses a JSON parameter object, filling defaults. Unknown keys, missing
/// required keys and out-of-range values are all reported as
/// [`ElbError::InvalidParam`].
pub fn params_from_json(text: &str) -> Result<ModelParams> {
    serde_json::from_str(text).map_err(|e| ElbError::InvalidParam {
        field: "json",
        reason: e.to_string(),
    })
}

/// Range-checks `params` and evaluates both parameter restrictions.
pub fn validate_params(params: &ModelParams) -> Result<AssumptionReport> {
    params.check_ranges()?;
    let a1_bound = params.m_xpi / (params.beta * params.m_pipi);
    let a2_bound = params.m_xpi
        + (1.0 - params.m_xx) * (params.beta * params.m_pipi - 1.0)
            / (params.lambda * params.sigma);
    let a1_ok = params.psi < a1_bound;
    let a2_ok = params.psi > a2_bound;
    let a = regime_system(params, Regime::Normal).m;
    let eig_a = a.eigenvalues();
    let rho_a = eig_a.max_modulus();

    let mut messages = Vec::new();
    messages.push(format!(
        "assumption 1 (real eigenvalues): psi = {} {} m_xpi/(beta m_pipi) = {}",
        params.psi,
        if a1_ok { "<" } else { ">=" },
        a1_bound
    ));
    messages.push(format!(
        "assumption 2 (Taylor principle): psi = {} {} {}",
        params.psi,
        if a2_ok { ">" } else { "<=" },
        a2_bound
    ));
    if !eig_a.is_real() {
        messages.push("Normal-regime matrix has complex eigenvalues".into());
    }
    if rho_a >= 1.0 {
        messages.push(format!("Normal-regime spectral radius {rho_a} >= 1"));
    }
    Ok(AssumptionReport {
        a1_ok,
        a2_ok,
        a1_bound,
        a2_bound,
        eig_a,
        rho_a,
        messages,
    })
}

/// `F(p) = (1 − p m_xx)(1 − p β m_ππ) − p λ σ m_xπ = det(I − p A*)`.
pub fn f_of_p(params: &ModelParams, p: f64) -> f64 {
    (1.0 - p * params.m_xx) * (1.0 - p * params.beta * params.m_pipi)
        - p * params.lambda * params.sigma * params.m_xpi
}

/// Smaller root of `F`, the persistence above which ELB dynamics explode.
///
/// `F(p) = a p² + b p + 1` with `a ≥ 0`, `b < 0`; the smaller root is
/// `2 / (−b + √(b² − 4a))`, which stays accurate as `a → 0`.
pub fn p_bar(params: &ModelParams) -> Result<f64> {
    let a = params.m_xx * params.beta * params.m_pipi;
    let b =
        -(params.m_xx + params.beta * params.m_pipi + params.lambda * params.sigma * params.m_xpi);
    let disc = b * b - 4.0 * a;
    if disc.is_nan() || disc < 0.0 {
        return Err(ElbError::NoBifurcation);
    }
    let root = 2.0 / (-b + disc.sqrt());
    if root > 0.0 && root < 1.0 {
        Ok(root)
    } else {
        Err(ElbError::NoBifurcation)
    }
}

/// Shock size above which the Normal-regime MSV candidate breaches the
/// bound: `d̄(p) = μ/(λψ)·[(1−p m_xx)(1−p β m_ππ) + λσ(ψ − p m_xπ)]`.
pub fn d_bar(params: &ModelParams, p: f64) -> f64 {
    let ModelParams {
        sigma,
        beta,
        psi,
        lambda,
        mu,
        m_xx,
        m_xpi,
        m_pipi,
        ..
    } = *params;
    mu / (lambda * psi)
        * ((1.0 - p * m_xx) * (1.0 - p * beta * m_pipi) + lambda * sigma * (psi - p * m_xpi))
}

/// Shock size at which the bound binds in the terminal low-state period:
/// `σμ + μ/(λψ)`. Equal to `d_bar(params, 0.0)`.
pub fn d_bar0(params: &ModelParams) -> f64 {
    d_bar(params, 0.0)
}

/// Inflation below which the policy rate sits at the floor: `−μ/ψ`.
pub fn elb_inflation_threshold(params: &ModelParams) -> f64 {
    -params.mu / params.psi
}

pub fn spectral_radius_2x2(m: &Mat2) -> f64 {
    crate::linalg::spectral_radius_2x2(m)
}

pub fn eigenvalues_2x2(m: &Mat2) -> Eigenvalues {
    crate::linalg::eigenvalues_2x2(m)
}

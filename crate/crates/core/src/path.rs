//! Backward induction over the truncated chain.
//!
//! While the shock is in its low state, next-period expectations are
//! `p·X_{k+1}` (the absorbing state contributes zero). After `ℓ` low-state
//! periods the economy is back at the zero steady state, so the recursion
//! starts from `X_ℓ = 0` and walks back to the impact period `k = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{ElbError, Result};
use crate::linalg::Vec2;
use crate::model::{regime_system, ModelParams, ReducedForm, Regime, ShockSpec};

/// One period of a solved path.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodState {
    pub x: f64,
    pub pi: f64,
    pub i: f64,
    pub regime: Regime,
}

impl PeriodState {
    pub const STEADY: PeriodState = PeriodState {
        x: 0.0,
        pi: 0.0,
        i: 0.0,
        regime: Regime::Normal,
    };

    pub fn vec(&self) -> Vec2 {
        Vec2::new(self.x, self.pi)
    }
}

/// Solution type of a low-state path.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathKind {
    /// The bound never binds.
    PureNormal,
    /// The bound binds in every low-state period.
    PureElb,
    /// Periods `0..=switch_k` at the bound, the rest Normal.
    Mixed { switch_k: usize },
}

impl PathKind {
    pub fn label(&self) -> &'static str {
        match self {
            PathKind::PureNormal => "PN",
            PathKind::PureElb => "PL",
            PathKind::Mixed { .. } => "M",
        }
    }

    pub fn switch_k(&self) -> Option<usize> {
        match self {
            PathKind::Mixed { switch_k } => Some(*switch_k),
            _ => None,
        }
    }
}

/// Hypothetical path conditional on the shock staying low for all `ℓ`
/// periods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSolution {
    pub states: Vec<PeriodState>,
    pub shock: ShockSpec,
    pub kind: PathKind,
}

impl PathSolution {
    pub fn impact(&self) -> PeriodState {
        self.states[0]
    }

    pub fn regimes(&self) -> Vec<Regime> {
        self.states.iter().map(|s| s.regime).collect()
    }
}

/// Both reduced forms, built once per solve.
#[derive(Debug, Clone, Copy)]
pub struct RegimePair {
    pub normal: ReducedForm,
    pub elb: ReducedForm,
}

impl RegimePair {
    pub fn new(params: &ModelParams) -> Self {
        RegimePair {
            normal: regime_system(params, Regime::Normal),
            elb: regime_system(params, Regime::Elb),
        }
    }

    pub fn get(&self, regime: Regime) -> &ReducedForm {
        match regime {
            Regime::Normal => &self.normal,
            Regime::Elb => &self.elb,
        }
    }
}

/// Width of the tie band around `ψπ = −μ` resolved in favour of the bound.
pub fn tie_tolerance(params: &ModelParams) -> f64 {
    1e-12 * params.mu.max(1.0)
}

/// Resolves one period given the continuation value in the low state.
pub fn step_back(params: &ModelParams, next_state: Vec2, d: f64, p: f64) -> Result<PeriodState> {
    let systems = RegimePair::new(params);
    resolve_period(params, &systems, next_state, d, p, 0.0, 0)
}

/// Guess-and-verify for one period. `k` is only used for error context.
pub(crate) fn resolve_period(
    params: &ModelParams,
    systems: &RegimePair,
    next_state: Vec2,
    d: f64,
    p: f64,
    g: f64,
    k: usize,
) -> Result<PeriodState> {
    let expectation = next_state.scale(p);
    let floor = params.rate_floor();
    let tol = tie_tolerance(params);

    let normal = systems.normal.apply(expectation, d, g);
    let normal_rate = params.psi * normal.pi();
    if normal_rate > floor + tol {
        return Ok(PeriodState {
            x: normal.x(),
            pi: normal.pi(),
            i: normal_rate,
            regime: Regime::Normal,
        });
    }

    let elb = systems.elb.apply(expectation, d, g);
    let elb_rate = params.psi * elb.pi();
    // ψπ_L + μ = (1 + λσψ)(ψπ_N + μ), so a tie on the Normal side maps to a
    // band (1 + λσψ) times wider here.
    let slack = tol * params.normal_denominator() + 1e-12 * elb_rate.abs();
    if elb_rate <= floor + slack {
        Ok(PeriodState {
            x: elb.x(),
            pi: elb.pi(),
            i: floor,
            regime: Regime::Elb,
        })
    } else {
        Err(ElbError::Contradiction {
            k,
            normal_rate,
            elb_rate,
            floor,
        })
    }
}

/// Full low-state path for `shock`, solved backward from the terminal
/// condition.
pub fn solve_hypothetical_path(params: &ModelParams, shock: &ShockSpec) -> Result<PathSolution> {
    solve_hypothetical_path_with_spending(params, shock, 0.0)
}

/// As [`solve_hypothetical_path`] with government spending `g` active in
/// every low-state period and switched off together with the shock.
pub fn solve_hypothetical_path_with_spending(
    params: &ModelParams,
    shock: &ShockSpec,
    g: f64,
) -> Result<PathSolution> {
    shock.check()?;
    let systems = RegimePair::new(params);
    let ell = shock.ell;
    let mut states = vec![PeriodState::STEADY; ell];
    let mut next = Vec2::ZERO;
    for k in (0..ell).rev() {
        let st = resolve_period(params, &systems, next, shock.d, shock.p, g, k)?;
        states[k] = st;
        next = st.vec();
    }
    let kind = classify_regimes(&states)?;
    Ok(PathSolution {
        states,
        shock: *shock,
        kind,
    })
}

/// Path under an imposed regime sequence, with no verification step.
///
/// Used to differentiate within a fixed regime pattern.
pub fn solve_with_regimes(
    params: &ModelParams,
    shock: &ShockSpec,
    g: f64,
    regimes: &[Regime],
) -> Result<Vec<Vec2>> {
    shock.check()?;
    if regimes.len() != shock.ell {
        return Err(ElbError::InvalidArgument(format!(
            "regime pattern has {} entries, expected ℓ = {}",
            regimes.len(),
            shock.ell
        )));
    }
    let systems = RegimePair::new(params);
    let mut out = vec![Vec2::ZERO; shock.ell];
    let mut next = Vec2::ZERO;
    for k in (0..shock.ell).rev() {
        next = systems
            .get(regimes[k])
            .apply(next.scale(shock.p), shock.d, g);
        out[k] = next;
    }
    Ok(out)
}

/// Classifies a regime sequence, rejecting anything other than an ELB block
/// followed by a Normal block.
pub fn classify_regimes(states: &[PeriodState]) -> Result<PathKind> {
    let first_normal = states
        .iter()
        .position(|s| s.regime == Regime::Normal)
        .unwrap_or(states.len());
    if states[first_normal..]
        .iter()
        .any(|s| s.regime == Regime::Elb)
    {
        let pattern: String = states
            .iter()
            .map(|s| match s.regime {
                Regime::Normal => 'N',
                Regime::Elb => 'Z',
            })
            .collect();
        return Err(ElbError::MixedStructure { pattern });
    }
    Ok(if first_normal == 0 {
        PathKind::PureNormal
    } else if first_normal == states.len() {
        PathKind::PureElb
    } else {
        PathKind::Mixed {
            switch_k: first_normal - 1,
        }
    })
}

/// Realized path when the shock exits after `exit_period` low-state
/// periods. The prefix is copied from the hypothetical path; later entries
/// are the zero steady state. Output length is `ℓ`.
pub fn realize_path(path: &PathSolution, exit_period: usize) -> Result<Vec<PeriodState>> {
    let ell = path.shock.ell;
    if exit_period < 1 || exit_period > ell {
        return Err(ElbError::ExitPeriodOutOfRange { exit_period, ell });
    }
    let mut out = Vec::with_capacity(ell);
    out.extend_from_slice(&path.states[..exit_period]);
    out.resize(ell, PeriodState::STEADY);
    Ok(out)
}

/// A time-invariant candidate, or a flag when `I − pM` is singular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MsvCandidate {
    Point { x: f64, pi: f64 },
    Singular,
}

impl MsvCandidate {
    pub fn point(&self) -> Option<Vec2> {
        match *self {
            MsvCandidate::Point { x, pi } => Some(Vec2::new(x, pi)),
            MsvCandidate::Singular => None,
        }
    }
}

/// Both constant-allocation candidates under the untruncated chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MsvReport {
    pub normal_candidate: MsvCandidate,
    pub elb_candidate: MsvCandidate,
    pub normal_valid: bool,
    pub elb_valid: bool,
    pub count: u8,
}

/// Normal candidate `(I − pA)⁻¹ C d` and ELB candidate
/// `(I − pA*)⁻¹ (C* d + E*)`.
///
/// The ELB candidate is reported for every `p`; above the bifurcation it is
/// the analytic continuation of the geometric sum rather than its limit.
pub fn msv_candidates(params: &ModelParams, d: f64, p: f64) -> MsvReport {
    let systems = RegimePair::new(params);
    let floor = params.rate_floor();
    let candidate = |rf: &ReducedForm| {
        let lhs = crate::linalg::Mat2::IDENTITY - rf.m.scale(p);
        match lhs.solve(rf.forcing(d, 0.0)) {
            Some(v) => MsvCandidate::Point {
                x: v.x(),
                pi: v.pi(),
            },
            None => MsvCandidate::Singular,
        }
    };
    let normal_candidate = candidate(&systems.normal);
    let elb_candidate = candidate(&systems.elb);
    let normal_valid = normal_candidate
        .point()
        .is_some_and(|v| params.psi * v.pi() > floor);
    let elb_valid = elb_candidate
        .point()
        .is_some_and(|v| params.psi * v.pi() <= floor);
    MsvReport {
        normal_candidate,
        elb_candidate,
        normal_valid,
        elb_valid,
        count: normal_valid as u8 + elb_valid as u8,
    }
}

/// Escape factor (relative to the `ℓ = 1` magnitude) that declares divergence.
pub const DIVERGENCE_FACTOR: f64 = 1e6;

/// Behaviour of the impact state as `ℓ → ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum LimitOutcome {
    Converged { x: f64, pi: f64, ell: usize },
    Diverging { growth_factor: f64, ell: usize },
}

/// Follows the impact state for `ℓ = 1, 2, …`.
///
/// By index symmetry the impact state for `ℓ` is the state `ℓ − 1` periods
/// before the end of any longer path, so the sequence is produced by a
/// single backward recursion.
pub fn limit_impact(
    params: &ModelParams,
    d: f64,
    p: f64,
    tol: f64,
    ell_cap: usize,
) -> Result<LimitOutcome> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(ElbError::InvalidArgument("tol must be > 0".into()));
    }
    if ell_cap < 2 {
        return Err(ElbError::InvalidArgument("ell_cap must be ≥ 2".into()));
    }
    ShockSpec::new(d, p, 1)?;
    let systems = RegimePair::new(params);
    let first = resolve_period(params, &systems, Vec2::ZERO, d, p, 0.0, 0)?.vec();
    let escape = DIVERGENCE_FACTOR * first.max_abs();
    let mut prev = first;
    for ell in 2..=ell_cap {
        let cur = resolve_period(params, &systems, prev, d, p, 0.0, 0)?.vec();
        if (cur - prev).max_abs() < tol {
            return Ok(LimitOutcome::Converged {
                x: cur.x(),
                pi: cur.pi(),
                ell,
            });
        }
        if escape > 0.0 && cur.max_abs() > escape {
            return Ok(LimitOutcome::Diverging {
                growth_factor: cur.max_abs() / prev.max_abs(),
                ell,
            });
        }
        prev = cur;
    }
    Err(ElbError::Inconclusive { ell_cap })
}

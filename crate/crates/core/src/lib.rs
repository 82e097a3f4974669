//! Solver toolkit for the three-equation New Keynesian model with an
//! effective lower bound on the policy rate, driven by a demand shock that
//! follows a truncated two-state Markov chain.
//!
//! * [`model`]: parameters, reduced forms, thresholds `p̄`, `d̄(p)`, `d̄(0)`.
//! * [`path`]: backward induction, realized paths, MSV candidates, limits.
//! * [`regions`]: `(p, d)` region maps and the duration threshold `ℓ̄`.
//! * [`multiplier`]: government-spending multipliers on consumption.
//! * [`export`] and [`cli`]: CSV/JSON writers and the command-line driver.

pub mod cli;
pub mod error;
pub mod export;
pub mod linalg;
pub mod model;
pub mod multiplier;
pub mod path;
pub mod regions;

pub use error::{ElbError, Result};
pub use linalg::{Eigenvalues, Mat2, Vec2};
pub use model::{
    d_bar, d_bar0, elb_inflation_threshold, f_of_p, p_bar, regime_system, validate_params,
    AssumptionReport, ModelParams, ReducedForm, Regime, ShockSpec,
};
pub use multiplier::{
    ar2_coefficients, ar2_decompose, ell_plus, multiplier_mixed, multiplier_pl,
    multiplier_pl_limit, multiplier_pn, Ar2Coefficients, ModalDecomposition, MultiplierLimit,
    MultiplierSeries, RegimeContext,
};
pub use path::{
    limit_impact, msv_candidates, realize_path, solve_hypothetical_path, step_back, LimitOutcome,
    MsvCandidate, MsvReport, PathKind, PathSolution, PeriodState,
};
pub use regions::{
    classify_msv, classify_truncated, ell_bar, region_map, MapMode, RegionGrid, RegionLabel,
    Stability, TruncatedKind,
};

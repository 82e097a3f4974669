use thiserror::Error;

/// Errors surfaced by the solver, classifier and multiplier routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElbError {
    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParam { field: &'static str, reason: String },

    #[error("invalid shock `{field}`: {reason}")]
    InvalidShock { field: &'static str, reason: String },

    #[error("F(p) has no root in (0, 1); ELB dynamics are stable for every persistence")]
    NoBifurcation,

    #[error(
        "regime contradiction at k={k}: Normal rejected (ψπ_N={normal_rate:.6e}) \
         but ELB rejected too (ψπ_L={elb_rate:.6e}, −μ={floor:.6e})"
    )]
    Contradiction {
        k: usize,
        normal_rate: f64,
        elb_rate: f64,
        floor: f64,
    },

    #[error("regime sequence is not an ELB block followed by a Normal block: {pattern}")]
    MixedStructure { pattern: String },

    #[error("exit period {exit_period} outside 1..={ell}")]
    ExitPeriodOutOfRange { exit_period: usize, ell: usize },

    #[error("limit not resolved within ℓ ≤ {ell_cap}")]
    Inconclusive { ell_cap: usize },

    #[error(
        "classifier mismatch at p={p}, d={d}: candidate count {candidate_count} \
         vs threshold count {rule_count}"
    )]
    ClassifierMismatch {
        p: f64,
        d: f64,
        candidate_count: u8,
        rule_count: u8,
    },

    #[error("shock d={d} is not in the mixed band ({d_bar_p}, {d_bar0}) at p={p}")]
    NotMixedBand {
        d: f64,
        p: f64,
        d_bar_p: f64,
        d_bar0: f64,
    },

    #[error("duration threshold ℓ̄ not reached within ℓ ≤ {ell_cap}")]
    ThresholdNotReached { ell_cap: usize },

    #[error("modal decomposition unsupported: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, ElbError>;

//! Labelling of the `(p, d)` plane.
//!
//! Two maps are produced: the number of constant (MSV) equilibria under the
//! untruncated chain, and the solution type of the truncated-chain path.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ElbError, Result};
use crate::linalg::Vec2;
use crate::model::{d_bar, d_bar0, p_bar, ModelParams};
use crate::path::{msv_candidates, tie_tolerance, RegimePair};

/// Distance from a threshold inside which the two counting routes are not
/// required to agree.
pub const BOUNDARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TruncatedKind {
    PN,
    Mixed,
    PL,
}

impl TruncatedKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            TruncatedKind::PN => "PN",
            TruncatedKind::Mixed => "M",
            TruncatedKind::PL => "PL",
        }
    }

    fn rank(&self) -> u8 {
        match self {
            TruncatedKind::PN => 0,
            TruncatedKind::Mixed => 1,
            TruncatedKind::PL => 2,
        }
    }
}

impl PartialOrd for TruncatedKind {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TruncatedKind {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.rank().cmp(&other.rank())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Stability {
    /// `p < p̄`: ELB dynamics contract.
    Stable,
    /// `p ≥ p̄`: ELB dynamics explode.
    Unstable,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RegionLabel {
    pub msv_count: Option<u8>,
    pub truncated_kind: TruncatedKind,
    pub stability: Stability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapMode {
    Msv,
    Truncated,
}

impl std::str::FromStr for MapMode {
    type Err = ElbError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "msv" => Ok(MapMode::Msv),
            "truncated" => Ok(MapMode::Truncated),
            other => Err(ElbError::InvalidArgument(format!(
                "mode must be `msv` or `truncated`, got `{other}`"
            ))),
        }
    }
}

/// Precomputed thresholds shared by every cell of a map.
#[derive(Debug, Clone, Copy)]
struct Thresholds {
    p_bar: Option<f64>,
    d_bar0: f64,
}

impl Thresholds {
    fn new(params: &ModelParams) -> Self {
        Thresholds {
            p_bar: p_bar(params).ok(),
            d_bar0: d_bar0(params),
        }
    }

    fn stability(&self, p: f64) -> Stability {
        match self.p_bar {
            Some(pb) if p >= pb => Stability::Unstable,
            _ => Stability::Stable,
        }
    }
}

fn truncated_kind(params: &ModelParams, th: &Thresholds, d: f64, p: f64) -> TruncatedKind {
    if d >= th.d_bar0 {
        TruncatedKind::PL
    } else if d <= d_bar(params, p) {
        TruncatedKind::PN
    } else {
        TruncatedKind::Mixed
    }
}

/// Equilibrium count implied by the `p̄` / `d̄(p)` rules, with a flag for
/// cells too close to a threshold to be decided reliably.
fn rule_count(params: &ModelParams, th: &Thresholds, d: f64, p: f64) -> (u8, bool) {
    let db = d_bar(params, p);
    let near_d = (d - db).abs() <= BOUNDARY_TOL * db.abs().max(1.0);
    match th.p_bar {
        None => (1, false),
        Some(pb) => {
            let near_p = (p - pb).abs() <= BOUNDARY_TOL;
            let count = if p < pb {
                1
            } else if d < db {
                2
            } else {
                0
            };
            (count, near_p || (near_d && p >= pb - BOUNDARY_TOL))
        }
    }
}

fn msv_label(params: &ModelParams, th: &Thresholds, d: f64, p: f64) -> Result<RegionLabel> {
    let report = msv_candidates(params, d, p);
    let (rule, near_boundary) = rule_count(params, th, d, p);
    if !near_boundary && report.count != rule {
        return Err(ElbError::ClassifierMismatch {
            p,
            d,
            candidate_count: report.count,
            rule_count: rule,
        });
    }
    Ok(RegionLabel {
        msv_count: Some(report.count),
        truncated_kind: truncated_kind(params, th, d, p),
        stability: th.stability(p),
    })
}

/// Number of constant equilibria, cross-checked between candidate validity
/// and the threshold rules.
pub fn classify_msv(params: &ModelParams, d: f64, p: f64) -> Result<RegionLabel> {
    msv_label(params, &Thresholds::new(params), d, p)
}

/// Truncated-chain solution type: PN iff `d ≤ d̄(p)`, PL iff `d ≥ d̄(0)`,
/// Mixed in between.
pub fn classify_truncated(params: &ModelParams, d: f64, p: f64) -> RegionLabel {
    let th = Thresholds::new(params);
    RegionLabel {
        msv_count: None,
        truncated_kind: truncated_kind(params, &th, d, p),
        stability: th.stability(p),
    }
}

/// Dense label grid, stored d-major: `labels[i_d * p_axis.len() + i_p]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionGrid {
    pub mode: MapMode,
    pub p_axis: Vec<f64>,
    pub d_axis: Vec<f64>,
    pub labels: Vec<RegionLabel>,
}

impl RegionGrid {
    pub fn label(&self, i_p: usize, i_d: usize) -> RegionLabel {
        self.labels[i_d * self.p_axis.len() + i_p]
    }

    /// `(p, d, label)` in storage order.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, RegionLabel)> + '_ {
        let np = self.p_axis.len();
        self.labels.iter().enumerate().map(move |(j, l)| {
            let (i_d, i_p) = (j / np, j % np);
            (self.p_axis[i_p], self.d_axis[i_d], *l)
        })
    }
}

fn check_axis(name: &str, axis: &[f64], lo: f64, hi: f64, hi_open: bool) -> Result<()> {
    if axis.is_empty() {
        return Err(ElbError::InvalidArgument(format!("{name} axis is empty")));
    }
    for w in axis.windows(2) {
        if w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less) {
            return Err(ElbError::InvalidArgument(format!(
                "{name} axis must be strictly increasing"
            )));
        }
    }
    let inside = |v: f64| v.is_finite() && v >= lo && if hi_open { v < hi } else { v <= hi };
    if let Some(bad) = axis.iter().find(|v| !inside(**v)) {
        return Err(ElbError::InvalidArgument(format!(
            "{name} axis value {bad} outside its domain"
        )));
    }
    Ok(())
}

/// Evaluates every cell of the grid. Rows (one per `d`) are computed in
/// parallel and assembled in axis order.
pub fn region_map(
    params: &ModelParams,
    p_axis: &[f64],
    d_axis: &[f64],
    mode: MapMode,
) -> Result<RegionGrid> {
    check_axis("p", p_axis, 0.0, 1.0, true)?;
    check_axis("d", d_axis, 0.0, params.d_max, false)?;
    let th = Thresholds::new(params);
    let rows: Vec<Vec<RegionLabel>> = d_axis
        .par_iter()
        .map(|&d| {
            p_axis
                .iter()
                .map(|&p| match mode {
                    MapMode::Msv => msv_label(params, &th, d, p),
                    MapMode::Truncated => Ok(RegionLabel {
                        msv_count: None,
                        truncated_kind: truncated_kind(params, &th, d, p),
                        stability: th.stability(p),
                    }),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionGrid {
        mode,
        p_axis: p_axis.to_vec(),
        d_axis: d_axis.to_vec(),
        labels: rows.into_iter().flatten().collect(),
    })
}

/// `n` evenly spaced points on `[lo, hi]`.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let step = (hi - lo) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { hi } else { lo + step * i as f64 })
                .collect()
        }
    }
}

/// Default map axes: `p ∈ [0, 0.99]`, `d ∈ [0, d_max]`.
pub fn default_axes(params: &ModelParams, n_p: usize, n_d: usize) -> (Vec<f64>, Vec<f64>) {
    (linspace(0.0, 0.99, n_p), linspace(0.0, params.d_max, n_d))
}

pub const DEFAULT_ELL_CAP: usize = 512;

/// Smallest `ℓ` at which the bound binds on impact.
///
/// Returns `Some(1)` when `d ≥ d̄(0)` and `None` when `d ≤ d̄(p)` (the
/// Normal-regime impact never reaches the bound). Otherwise scans the
/// Normal-hypothesis impact inflation `v2·Σ(pA)ⁱ·C·d`, using the same
/// arithmetic and tie rule as the path solver.
pub fn ell_bar(params: &ModelParams, d: f64, p: f64, ell_cap: usize) -> Option<usize> {
    if d >= d_bar0(params) {
        return Some(1);
    }
    if d <= d_bar(params, p) {
        return None;
    }
    let systems = RegimePair::new(params);
    let cutoff = params.rate_floor() + tie_tolerance(params);
    let mut s = Vec2::ZERO;
    for ell in 1..=ell_cap {
        s = systems.normal.apply(s.scale(p), d, 0.0);
        if params.psi * s.pi() <= cutoff {
            return Some(ell);
        }
    }
    None
}

/// Threshold curves sampled on a `p` grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub p: f64,
    pub d_bar: f64,
    pub p_bar: Option<f64>,
    pub d_bar0: f64,
}

/// `d̄(p)` sampled on `p_axis`, with the scalar thresholds repeated per row.
pub fn threshold_curves(params: &ModelParams, p_axis: &[f64]) -> Vec<CurvePoint> {
    let pb = p_bar(params).ok();
    let d0 = d_bar0(params);
    p_axis
        .iter()
        .map(|&p| CurvePoint {
            p,
            d_bar: d_bar(params, p),
            p_bar: pb,
            d_bar0: d0,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ShockSpec;
    use crate::path::{solve_hypothetical_path, PathKind};

    fn base() -> ModelParams {
        ModelParams::baseline()
    }

    #[test]
    fn msv_counts() {
        let p = base();
        for d in linspace(0.0, p.d_max, 25) {
            assert_eq!(classify_msv(&p, d, 0.5).unwrap().msv_count, Some(1));
        }
        assert_eq!(classify_msv(&p, 1e-6, 0.9).unwrap().msv_count, Some(2));
        assert_eq!(classify_msv(&p, p.d_max, 0.9).unwrap().msv_count, Some(0));
    }

    #[test]
    fn truncated_labels() {
        let p = base();
        let l = classify_truncated(&p, 0.0, 0.3);
        assert_eq!(
            (l.truncated_kind, l.stability),
            (TruncatedKind::PN, Stability::Stable)
        );
        let l = classify_truncated(&p, 0.0, 0.9);
        assert_eq!(
            (l.truncated_kind, l.stability),
            (TruncatedKind::PN, Stability::Unstable)
        );
        let d = 0.5 * (d_bar(&p, 0.5) + d_bar0(&p));
        let l = classify_truncated(&p, d, 0.5);
        assert_eq!(
            (l.truncated_kind, l.stability),
            (TruncatedKind::Mixed, Stability::Stable)
        );
        let l = classify_truncated(&p, 1.2 * d_bar0(&p), 0.9);
        assert_eq!(
            (l.truncated_kind, l.stability),
            (TruncatedKind::PL, Stability::Unstable)
        );
        // p = 0 collapses the band; the terminal tie belongs to the bound.
        let l = classify_truncated(&p, d_bar0(&p), 0.0);
        assert_eq!(l.truncated_kind, TruncatedKind::PL);
    }

    #[test]
    fn small_grid() {
        let p = base();
        let g = region_map(&p, &[0.2, 0.9], &[0.0, d_bar0(&p) * 1.5], MapMode::Msv).unwrap();
        assert_eq!(g.labels.len(), 4);
        assert_eq!(g.label(0, 0).truncated_kind, TruncatedKind::PN);
        assert_eq!(g.label(1, 0).truncated_kind, TruncatedKind::PN);
        assert_eq!(g.label(0, 0).msv_count, Some(1));
        assert_eq!(g.label(1, 0).msv_count, Some(2));
        assert_eq!(g.label(1, 1).msv_count, Some(0));
    }

    #[test]
    fn axis_validation() {
        let p = base();
        assert!(region_map(&p, &[0.5, 0.4], &[0.0], MapMode::Msv).is_err());
        assert!(region_map(&p, &[1.0], &[0.0], MapMode::Msv).is_err());
        assert!(region_map(&p, &[0.5], &[p.d_max * 2.0], MapMode::Truncated).is_err());
        assert!(region_map(&p, &[], &[0.0], MapMode::Truncated).is_err());
    }

    #[test]
    fn ell_bar_degenerate_cases() {
        let p = base();
        assert_eq!(ell_bar(&p, d_bar0(&p) * 1.01, 0.5, 10), Some(1));
        assert_eq!(ell_bar(&p, d_bar(&p, 0.5), 0.5, 100_000), None);
        assert_eq!(ell_bar(&p, 0.5 * d_bar(&p, 0.5), 0.5, 512), None);
    }

    #[test]
    fn ell_bar_matches_path_solver() {
        let p = base();
        for &pp in &[0.3, 0.6, 0.8, 0.95] {
            let d = 0.5 * (d_bar(&p, pp) + d_bar0(&p));
            let lb = ell_bar(&p, d, pp, 512).unwrap();
            assert!(lb >= 2);
            let at = solve_hypothetical_path(&p, &ShockSpec::new(d, pp, lb).unwrap()).unwrap();
            assert_ne!(at.kind, PathKind::PureNormal);
            let before =
                solve_hypothetical_path(&p, &ShockSpec::new(d, pp, lb - 1).unwrap()).unwrap();
            assert_eq!(before.kind, PathKind::PureNormal);
        }
    }

    #[test]
    fn linspace_endpoints() {
        let v = linspace(0.0, 0.99, 200);
        assert_eq!(v.len(), 200);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[199], 0.99);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }
}

//! Shared helpers for the integration tests: random valid calibrations and
//! oracles written from the model equations, independent of the library's
//! reduced forms.

#![allow(dead_code)]

use nk_elb::model::{CoreParams, Overrides};
use nk_elb::ModelParams;
use proptest::prelude::*;
use rand::Rng;

/// Raw draws that map onto a valid calibration.
#[derive(Debug, Clone, Copy)]
pub struct Draw {
    pub sigma: f64,
    pub beta: f64,
    pub lambda: f64,
    pub m_xx: f64,
    pub m_xpi: f64,
    pub m_pipi: f64,
    /// Position of ψ between the two assumption bounds.
    pub u_psi: f64,
    pub mu: f64,
}

fn a1_bound(d: &Draw) -> f64 {
    d.m_xpi / (d.beta * d.m_pipi)
}

fn a2_bound(d: &Draw) -> f64 {
    d.m_xpi + (1.0 - d.m_xx) * (d.beta * d.m_pipi - 1.0) / (d.lambda * d.sigma)
}

/// `None` when the assumption window for ψ is empty or too thin.
pub fn build(d: Draw) -> Option<ModelParams> {
    let hi = a1_bound(&d);
    let lo = a2_bound(&d).max(0.05);
    if hi - lo < 1e-3 {
        return None;
    }
    let psi = lo + d.u_psi * (hi - lo);
    ModelParams::with_defaults(
        CoreParams {
            sigma: d.sigma,
            beta: d.beta,
            psi,
            lambda: d.lambda,
            m_xx: d.m_xx,
            m_xpi: d.m_xpi,
            m_pipi: d.m_pipi,
        },
        Overrides {
            mu: Some(d.mu),
            ..Default::default()
        },
    )
    .ok()
}

pub fn draw_strategy() -> impl Strategy<Value = Draw> {
    (
        0.5f64..3.0,
        0.9f64..0.999,
        0.02f64..0.5,
        0.5f64..1.0,
        0.5f64..1.0,
        0.5f64..1.0,
        0.02f64..0.98,
        0.001f64..0.02,
    )
        .prop_map(
            |(sigma, beta, lambda, m_xx, m_xpi, m_pipi, u_psi, mu)| Draw {
                sigma,
                beta,
                lambda,
                m_xx,
                m_xpi,
                m_pipi,
                u_psi,
                mu,
            },
        )
}

pub fn params_strategy() -> impl Strategy<Value = ModelParams> {
    draw_strategy().prop_filter_map("assumption window empty", build)
}

/// Calibrations whose bifurcation point lies inside `(0, 1)`.
pub fn params_with_bifurcation() -> impl Strategy<Value = ModelParams> {
    params_strategy().prop_filter("no bifurcation", |p| oracle_p_bar(p).is_some())
}

/// Rejection sampler for loops driven by a seeded RNG.
pub fn random_params<R: Rng>(rng: &mut R) -> ModelParams {
    loop {
        let d = Draw {
            sigma: rng.gen_range(0.5..3.0),
            beta: rng.gen_range(0.9..0.999),
            lambda: rng.gen_range(0.02..0.5),
            m_xx: rng.gen_range(0.5..1.0),
            m_xpi: rng.gen_range(0.5..1.0),
            m_pipi: rng.gen_range(0.5..1.0),
            u_psi: rng.gen_range(0.02..0.98),
            mu: rng.gen_range(0.001..0.02),
        };
        if let Some(p) = build(d) {
            return p;
        }
    }
}

// ---------------------------------------------------------------- oracles

pub type M2 = [[f64; 2]; 2];
pub type V2 = [f64; 2];

/// Normal-regime map obtained by substituting `i = ψπ` into the IS and
/// Phillips curves and solving for `(x, π)`.
pub fn normal_matrix(q: &ModelParams) -> M2 {
    let k = 1.0 / (1.0 + q.lambda * q.sigma * q.psi);
    [
        [
            k * q.m_xx,
            k * q.sigma * (q.m_xpi - q.psi * q.beta * q.m_pipi),
        ],
        [
            k * q.lambda * q.m_xx,
            k * (q.lambda * q.sigma * q.m_xpi + q.beta * q.m_pipi),
        ],
    ]
}

pub fn normal_forcing(q: &ModelParams, d: f64) -> V2 {
    let k = 1.0 / (1.0 + q.lambda * q.sigma * q.psi);
    [-k * d, -k * q.lambda * d]
}

/// ELB map with `i = −μ` substituted.
pub fn elb_matrix(q: &ModelParams) -> M2 {
    [
        [q.m_xx, q.sigma * q.m_xpi],
        [
            q.lambda * q.m_xx,
            q.lambda * q.sigma * q.m_xpi + q.beta * q.m_pipi,
        ],
    ]
}

pub fn elb_forcing(q: &ModelParams, d: f64) -> V2 {
    let x = q.sigma * q.mu - d;
    [x, q.lambda * x]
}

pub fn mat_vec(m: &M2, v: V2) -> V2 {
    [
        m[0][0] * v[0] + m[0][1] * v[1],
        m[1][0] * v[0] + m[1][1] * v[1],
    ]
}

/// Neumaier-compensated accumulator.
#[derive(Default, Clone, Copy)]
pub struct Compensated {
    sum: f64,
    c: f64,
}

impl Compensated {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.c
    }
}

/// `Σ_{i<n} (pM)ⁱ·f`, summed term by term with compensation.
pub fn geometric_oracle(m: &M2, p: f64, f: V2, n: usize) -> V2 {
    let pm = [[p * m[0][0], p * m[0][1]], [p * m[1][0], p * m[1][1]]];
    let mut term = f;
    let mut acc = [Compensated::default(); 2];
    for _ in 0..n {
        acc[0].add(term[0]);
        acc[1].add(term[1]);
        term = mat_vec(&pm, term);
    }
    [acc[0].value(), acc[1].value()]
}

/// `F(p) = det(I − pA*)` expanded from the ELB matrix.
pub fn oracle_f(q: &ModelParams, p: f64) -> f64 {
    let a = elb_matrix(q);
    (1.0 - p * a[0][0]) * (1.0 - p * a[1][1]) - p * p * a[0][1] * a[1][0]
}

/// Smallest root of `F` in `(0, 1)` by bisection.
pub fn oracle_p_bar(q: &ModelParams) -> Option<f64> {
    if oracle_f(q, 1.0) >= 0.0 {
        return None;
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if oracle_f(q, mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Spectral radius of `pA*` from the 2×2 characteristic polynomial.
pub fn oracle_rho_elb(q: &ModelParams, p: f64) -> f64 {
    let a = elb_matrix(q);
    let tr = p * (a[0][0] + a[1][1]);
    let det = p * p * (a[0][0] * a[1][1] - a[0][1] * a[1][0]);
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        let s = disc.sqrt();
        ((tr + s) / 2.0).abs().max(((tr - s) / 2.0).abs())
    } else {
        det.sqrt()
    }
}

/// Largest `d` at which the terminal period stays Normal:
/// `ψπ = −ψλd/(1+λσψ) = −μ`.
pub fn oracle_d_bar0(q: &ModelParams) -> f64 {
    q.mu * (1.0 + q.lambda * q.sigma * q.psi) / (q.lambda * q.psi)
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Componentwise relative error with a floor so near-zero components do not
/// dominate.
pub fn rel_err_vec(a: V2, b: V2) -> f64 {
    let scale = a[0].abs().max(a[1].abs()).max(b[0].abs()).max(b[1].abs());
    if scale == 0.0 {
        return 0.0;
    }
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs()) / scale
}

/// `d` at which the Normal fixed point `(I − pA)⁻¹·f_d·d` puts `ψπ` on `−μ`.
pub fn oracle_d_bar(q: &ModelParams, p: f64) -> f64 {
    let a = normal_matrix(q);
    let m = [
        [1.0 - p * a[0][0], -p * a[0][1]],
        [-p * a[1][0], 1.0 - p * a[1][1]],
    ];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let f = normal_forcing(q, 1.0);
    let pi_per_d = (m[0][0] * f[1] - m[1][0] * f[0]) / det;
    -q.mu / (q.psi * pi_per_d)
}

//! Fixed-size 2×2 linear algebra.
//!
//! Every system in this crate has exactly two endogenous variables
//! (`[x, π]`), so matrices are stored inline and eigenvalues come from the
//! trace/determinant closed form rather than an iterative solver.

use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Column vector `[x, π]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2(pub [f64; 2]);

impl Vec2 {
    pub const ZERO: Vec2 = Vec2([0.0, 0.0]);

    pub const fn new(x: f64, pi: f64) -> Self {
        Vec2([x, pi])
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.0[0]
    }

    #[inline]
    pub fn pi(&self) -> f64 {
        self.0[1]
    }

    pub fn scale(self, s: f64) -> Vec2 {
        Vec2([self.0[0] * s, self.0[1] * s])
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.0[0] * other.0[0] + self.0[1] * other.0[1]
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.0[0].abs().max(self.0[1].abs())
    }

    pub fn is_finite(self) -> bool {
        self.0.iter().all(|v| v.is_finite())
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2([self.0[0] + rhs.0[0], self.0[1] + rhs.0[1]])
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.0[0] += rhs.0[0];
        self.0[1] += rhs.0[1];
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2([self.0[0] - rhs.0[0], self.0[1] - rhs.0[1]])
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2([-self.0[0], -self.0[1]])
    }
}

/// Row-major 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);
    pub const ZERO: Mat2 = Mat2([[0.0, 0.0], [0.0, 0.0]]);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: f64) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn mul_vec(&self, v: Vec2) -> Vec2 {
        let m = &self.0;
        Vec2([
            m[0][0] * v.0[0] + m[0][1] * v.0[1],
            m[1][0] * v.0[0] + m[1][1] * v.0[1],
        ])
    }

    /// Inverse, or `None` when the determinant is exactly zero.
    pub fn inverse(&self) -> Option<Mat2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let m = &self.0;
        Some(Mat2([
            [m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det],
        ]))
    }

    /// Solves `self · v = rhs` by Cramer's rule.
    pub fn solve(&self, rhs: Vec2) -> Option<Vec2> {
        let det = self.det();
        if det == 0.0 || !det.is_finite() {
            return None;
        }
        let m = &self.0;
        Some(Vec2([
            (rhs.0[0] * m[1][1] - m[0][1] * rhs.0[1]) / det,
            (m[0][0] * rhs.0[1] - m[1][0] * rhs.0[0]) / det,
        ]))
    }

    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        let mut out = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                out = out.max((self.0[r][c] - other.0[r][c]).abs());
            }
        }
        out
    }

    pub fn eigenvalues(&self) -> Eigenvalues {
        eigenvalues_2x2(self)
    }

    pub fn spectral_radius(&self) -> f64 {
        spectral_radius_2x2(self)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Mul<Vec2> for Mat2 {
    type Output = Vec2;
    fn mul(self, rhs: Vec2) -> Vec2 {
        self.mul_vec(rhs)
    }
}

/// Eigenvalues of a real 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Eigenvalues {
    /// Real pair ordered `hi ≥ lo`.
    Real { hi: f64, lo: f64 },
    /// Complex-conjugate pair `re ± i·im` with `im > 0`.
    Complex { re: f64, im: f64 },
}

impl Eigenvalues {
    pub fn is_real(&self) -> bool {
        matches!(self, Eigenvalues::Real { .. })
    }

    /// Maximum modulus.
    pub fn max_modulus(&self) -> f64 {
        match *self {
            Eigenvalues::Real { hi, lo } => hi.abs().max(lo.abs()),
            Eigenvalues::Complex { re, im } => re.hypot(im),
        }
    }

    pub fn real_pair(&self) -> Option<(f64, f64)> {
        match *self {
            Eigenvalues::Real { hi, lo } => Some((hi, lo)),
            Eigenvalues::Complex { .. } => None,
        }
    }
}

/// Roots of `z² − τ z + δ = 0`.
///
/// The larger-magnitude real root is taken from the sign-matched branch and
/// the other from Vieta's product, which avoids cancellation when `τ² ≫ |δ|`.
pub fn quadratic_roots(trace: f64, det: f64) -> Eigenvalues {
    let half = 0.5 * trace;
    let disc = half * half - det;
    if disc < 0.0 {
        return Eigenvalues::Complex {
            re: half,
            im: (-disc).sqrt(),
        };
    }
    let root = disc.sqrt();
    let big = if half >= 0.0 {
        half + root
    } else {
        half - root
    };
    let small = if big != 0.0 { det / big } else { 0.0 };
    let (hi, lo) = if big >= small {
        (big, small)
    } else {
        (small, big)
    };
    Eigenvalues::Real { hi, lo }
}

pub fn eigenvalues_2x2(m: &Mat2) -> Eigenvalues {
    quadratic_roots(m.trace(), m.det())
}

pub fn spectral_radius_2x2(m: &Mat2) -> f64 {
    eigenvalues_2x2(m).max_modulus()
}

/// `Σ_{i=0}^{n−1} Mⁱ · v`, accumulated by Horner-style backward iteration
/// `s ← v + M·s`. Never uses `(I − M)⁻¹`.
pub fn geometric_sum_vec(m: &Mat2, v: Vec2, n: usize) -> Vec2 {
    let mut s = Vec2::ZERO;
    for _ in 0..n {
        s = v + m.mul_vec(s);
    }
    s
}

/// `Σ_{i=0}^{n−1} Mⁱ`.
pub fn geometric_sum_mat(m: &Mat2, n: usize) -> Mat2 {
    let mut s = Mat2::ZERO;
    for _ in 0..n {
        s = Mat2::IDENTITY + *m * s;
    }
    s
}

/// `Mⁿ` by repeated squaring.
pub fn mat_pow(m: &Mat2, mut n: usize) -> Mat2 {
    let mut base = *m;
    let mut acc = Mat2::IDENTITY;
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        n >>= 1;
    }
    acc
}

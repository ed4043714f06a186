//! The Hénon family `F(x, y) = (a − x² − b·y, x)`: periodic orbits with
//! zero trace, their continuation in `b`, and scans for attracting periods.

mod continuation;
mod scatter;

use nalgebra::{Matrix2, Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use twofloat::TwoFloat;

pub use continuation::{
    continue_isotracal, Branch, ContinuationOptions, IsotracalPath, IsotracalSample, StopReason,
};
pub use scatter::{classify, scatter, Cell, ScatterGrid, ScatterSpec};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HenonError {
    #[error("Newton did not converge in {iterations} iterations (residual {residual:e})")]
    Diverged { iterations: usize, residual: f64 },
    #[error("Newton matrix is singular")]
    Singular,
    #[error("continuation step fell below {0:e}")]
    StepUnderflow(f64),
    #[error("period must be positive")]
    ZeroPeriod,
}

pub type Result<T> = std::result::Result<T, HenonError>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HenonParams {
    pub a: f64,
    pub b: f64,
}

impl HenonParams {
    pub fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    /// Left of `(1+b)² + 4a = 0` there are no fixed points and every orbit
    /// escapes.
    pub fn below_saddle_node(&self) -> bool {
        (1.0 + self.b).powi(2) + 4.0 * self.a < 0.0
    }

    /// Right of `a = (5 + 2√5)(1+b)²` the map is a full horseshoe.
    pub fn is_full_horseshoe(&self) -> bool {
        self.a > (5.0 + 2.0 * 5f64.sqrt()) * (1.0 + self.b).powi(2)
    }

    pub fn step(&self, x: f64, y: f64) -> (f64, f64) {
        (self.a - x * x - self.b * y, x)
    }

    pub fn jacobian(&self, x: f64) -> Matrix2<f64> {
        Matrix2::new(-2.0 * x, -self.b, 1.0, 0.0)
    }
}

/// `F(x, y)` and `DF(x, y)`.
pub fn henon_step(params: HenonParams, x: f64, y: f64) -> ((f64, f64), Matrix2<f64>) {
    (params.step(x, y), params.jacobian(x))
}

/// `F^p(z)` and `DF^p(z)`.
pub fn orbit_jacobian(params: HenonParams, z: (f64, f64), p: usize) -> ((f64, f64), Matrix2<f64>) {
    let (mut x, mut y) = z;
    let mut jac = Matrix2::identity();
    for _ in 0..p {
        jac = params.jacobian(x) * jac;
        (x, y) = params.step(x, y);
    }
    ((x, y), jac)
}

/// Orbit points `z, F(z), …, F^{p-1}(z)`.
pub fn orbit(params: HenonParams, z: (f64, f64), p: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(p);
    let mut cur = z;
    for _ in 0..p {
        out.push(cur);
        cur = params.step(cur.0, cur.1);
    }
    out
}

/// A solution of `F^p(x, y) = (x, y)`, `tr DF^p(x, y) = 0` at fixed `b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsotracalPoint {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub y: f64,
    /// ∞-norm of `F^p(z) − z`.
    pub res_fp: f64,
    /// `|tr DF^p(z)|`.
    pub res_tr: f64,
    pub iterations: usize,
}

pub const NEWTON_TOL: f64 = 1e-10;
pub const NEWTON_MAX_ITER: usize = 50;

type Dd = TwoFloat;

/// `(F^p(z) − z, tr DF^p(z))` in double-double.
fn residual_dd(p: usize, b: f64, a: Dd, x0: Dd, y0: Dd) -> [Dd; 3] {
    let (mut x, mut y) = (x0, y0);
    let one = Dd::from(1.0);
    let zero = Dd::from(0.0);
    let (mut j00, mut j01, mut j10, mut j11) = (one, zero, zero, one);
    for _ in 0..p {
        let m = x * -2.0;
        (j00, j01, j10, j11) = (m * j00 - j10 * b, m * j01 - j11 * b, j00, j01);
        (x, y) = (a - x * x - y * b, x);
    }
    [x - x0, y - y0, j00 + j11]
}

/// Jacobian of `(F^p(z) − z, tr DF^p(z))` in `(a, x, y)`, with the trace row
/// from the second-order variational equations.
fn newton_matrix(p: usize, b: f64, a: f64, x0: f64, y0: f64) -> Matrix3<f64> {
    let params = HenonParams::new(a, b);
    let (mut x, mut y) = (x0, y0);
    // d(x_k, y_k)/d(a, x0, y0)
    let mut dx = Vector3::new(0.0, 1.0, 0.0);
    let mut dy = Vector3::new(0.0, 0.0, 1.0);
    let mut m = Matrix2::identity();
    let mut dm = [Matrix2::zeros(); 3];
    for _ in 0..p {
        let j = params.jacobian(x);
        for (k, d) in dm.iter_mut().enumerate() {
            *d = Matrix2::new(-2.0 * dx[k], 0.0, 0.0, 0.0) * m + j * *d;
        }
        m = j * m;
        (dx, dy) = (Vector3::new(1.0, 0.0, 0.0) - dx * (2.0 * x) - dy * b, dx);
        (x, y) = params.step(x, y);
    }
    let _ = y;
    let mut out = Matrix3::zeros();
    out.set_row(0, &(dx - Vector3::new(0.0, 1.0, 0.0)).transpose());
    out.set_row(1, &(dy - Vector3::new(0.0, 0.0, 1.0)).transpose());
    for k in 0..3 {
        out[(2, k)] = dm[k].trace();
    }
    out
}

/// Newton's method on `(a, x, y)` for a period-`p` orbit with zero trace.
///
/// The iterate and the residual are carried in double-double: the rounding
/// floor of `F^p` in `f64` grows with the orbit's expansion and passes
/// `NEWTON_TOL` around period 11. The Newton matrix is formed in `f64`.
pub fn solve_isotracal_point(p: usize, guess: (f64, f64, f64), b: f64) -> Result<IsotracalPoint> {
    if p == 0 {
        return Err(HenonError::ZeroPeriod);
    }
    let mut v = [Dd::from(guess.0), Dd::from(guess.1), Dd::from(guess.2)];
    let mut last = f64::INFINITY;
    for it in 0..=NEWTON_MAX_ITER {
        let g = residual_dd(p, b, v[0], v[1], v[2]).map(f64::from);
        let norm = g.iter().fold(0.0f64, |m, r| m.max(r.abs()));
        if !norm.is_finite() {
            break;
        }
        last = norm;
        if norm < NEWTON_TOL {
            return Ok(IsotracalPoint {
                a: v[0].hi(),
                b,
                x: v[1].hi(),
                y: v[2].hi(),
                res_fp: g[0].abs().max(g[1].abs()),
                res_tr: g[2].abs(),
                iterations: it,
            });
        }
        if it == NEWTON_MAX_ITER {
            break;
        }
        let m = newton_matrix(p, b, v[0].hi(), v[1].hi(), v[2].hi());
        let delta = m.lu().solve(&(-Vector3::from(g))).ok_or(HenonError::Singular)?;
        if !delta.iter().all(|d| d.is_finite()) {
            return Err(HenonError::Singular);
        }
        for k in 0..3 {
            v[k] += delta[k];
        }
    }
    Err(HenonError::Diverged { iterations: NEWTON_MAX_ITER, residual: last })
}

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::HenonParams;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatterSpec {
    pub a_range: (f64, f64),
    pub b_range: (f64, f64),
    pub a_res: usize,
    pub b_res: usize,
    pub period_min: usize,
    pub period_max: usize,
    pub transient: usize,
    pub escape_radius: f64,
    pub period_tol: f64,
}

impl Default for ScatterSpec {
    fn default() -> Self {
        Self {
            a_range: (1.75, 2.0),
            b_range: (0.0, 0.25),
            a_res: 400,
            b_res: 200,
            period_min: 8,
            period_max: 8,
            transient: 2000,
            escape_radius: 4.0,
            period_tol: 1e-6,
        }
    }
}

impl ScatterSpec {
    fn axis(range: (f64, f64), res: usize, k: usize) -> f64 {
        if res < 2 {
            return range.0;
        }
        range.0 + (range.1 - range.0) * k as f64 / (res - 1) as f64
    }

    /// Column `i` sits at `a(i)`; both ends of the range are sampled.
    pub fn a(&self, i: usize) -> f64 {
        Self::axis(self.a_range, self.a_res, i)
    }

    pub fn b(&self, j: usize) -> f64 {
        Self::axis(self.b_range, self.b_res, j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cell {
    Escape,
    Period(usize),
    /// Bounded, but no attracting period in range was found.
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScatterGrid {
    pub spec: ScatterSpec,
    /// Row-major, `b` rows of `a` columns.
    pub cells: Vec<Cell>,
}

impl ScatterGrid {
    pub fn cell(&self, i: usize, j: usize) -> Cell {
        self.cells[j * self.spec.a_res + i]
    }

    /// `(a, b, cell)` for every cell in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (f64, f64, Cell)> + '_ {
        self.cells.iter().enumerate().map(|(k, &c)| {
            let (i, j) = (k % self.spec.a_res, k / self.spec.a_res);
            (self.spec.a(i), self.spec.b(j), c)
        })
    }
}

/// Attracting period seen from `(0, 0)` after the transient.
pub fn classify(params: HenonParams, spec: &ScatterSpec) -> Cell {
    let (mut x, mut y) = (0.0f64, 0.0f64);
    for _ in 0..spec.transient {
        (x, y) = params.step(x, y);
        if !x.is_finite() || x.abs() > spec.escape_radius {
            return Cell::Escape;
        }
    }
    let start = (x, y);
    for q in 1..=spec.period_max {
        (x, y) = params.step(x, y);
        if !x.is_finite() || x.abs() > spec.escape_radius {
            return Cell::Escape;
        }
        if (x - start.0).abs().max((y - start.1).abs()) < spec.period_tol {
            return if q >= spec.period_min { Cell::Period(q) } else { Cell::None };
        }
    }
    Cell::None
}

pub fn scatter(spec: &ScatterSpec) -> ScatterGrid {
    let cells = (0..spec.a_res * spec.b_res)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % spec.a_res, k / spec.a_res);
            classify(HenonParams::new(spec.a(i), spec.b(j)), spec)
        })
        .collect();
    ScatterGrid { spec: spec.clone(), cells }
}

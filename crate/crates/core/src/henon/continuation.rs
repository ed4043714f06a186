use serde::{Deserialize, Serialize};

use super::{solve_isotracal_point, IsotracalPoint, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsotracalSample {
    pub b: f64,
    pub a: f64,
    pub x: f64,
    pub y: f64,
    pub res_fp: f64,
    pub res_tr: f64,
}

impl From<IsotracalPoint> for IsotracalSample {
    fn from(p: IsotracalPoint) -> Self {
        Self { b: p.b, a: p.a, x: p.x, y: p.y, res_fp: p.res_fp, res_tr: p.res_tr }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Met,
    BExceeded,
    /// Newton kept failing as the step shrank; usually a fold in `b`.
    StepUnderflow,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsotracalPath {
    pub period: usize,
    pub branch: Branch,
    pub samples: Vec<IsotracalSample>,
    pub met: bool,
    pub meet_b: Option<f64>,
    pub stop: StopReason,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuationOptions {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Steps converging within this many Newton iterations count as easy.
    pub easy_iterations: usize,
    /// Consecutive easy steps before the step doubles.
    pub easy_streak: usize,
    pub meet_tol: f64,
    pub b_max: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        Self {
            initial_step: 1e-4,
            min_step: 1e-12,
            max_step: 1e-3,
            easy_iterations: 5,
            easy_streak: 3,
            meet_tol: 1e-6,
            b_max: 1.0,
        }
    }
}

/// Largest distance from the predictor accepted for a step to `b`.
///
/// Without this bound Newton near a fold can land on an unrelated orbit
/// with zero trace and the branch silently jumps.
fn max_deviation(samples: &[IsotracalSample], b: f64) -> f64 {
    let last = samples[samples.len() - 1];
    if samples.len() < 2 {
        return 100.0 * (b - last.b) + 1e-9;
    }
    let prev = samples[samples.len() - 2];
    let moved = (last.a - prev.a).abs().max((last.x - prev.x).abs()).max((last.y - prev.y).abs());
    0.5 * moved * (b - last.b) / (last.b - prev.b) + 1e-9
}

fn predict(samples: &[IsotracalSample], b: f64) -> (f64, f64, f64) {
    let last = samples[samples.len() - 1];
    if samples.len() < 2 {
        return (last.a, last.x, last.y);
    }
    let prev = samples[samples.len() - 2];
    let t = (b - last.b) / (last.b - prev.b);
    (
        last.a + t * (last.a - prev.a),
        last.x + t * (last.x - prev.x),
        last.y + t * (last.y - prev.y),
    )
}

/// Follows the zero-trace period-`p` orbits born at `(a_minus, 0)` and
/// `(a_plus, 0)` upward in `b`, in lockstep, until their `a` values agree.
pub fn continue_isotracal(
    a_minus: f64,
    a_plus: f64,
    p: usize,
    opts: &ContinuationOptions,
) -> Result<(IsotracalPath, IsotracalPath)> {
    let start = |a: f64| solve_isotracal_point(p, (a, a, 0.0), 0.0).map(IsotracalSample::from);
    let mut minus = vec![start(a_minus)?];
    let mut plus = vec![start(a_plus)?];
    let mut h = opts.initial_step;
    let mut easy = 0;
    let mut b = 0.0;

    let stop = loop {
        let (m, q) = (minus[minus.len() - 1], plus[plus.len() - 1]);
        if (m.a - q.a).abs() < opts.meet_tol {
            break StopReason::Met;
        }
        if b > opts.b_max {
            break StopReason::BExceeded;
        }
        let next = b + h;
        let (gm, gp) = (predict(&minus, next), predict(&plus, next));
        // Each branch must stay well inside its own half of the gap, or a
        // Newton run could hand both branches the same orbit.
        let apart = (gm.0 - gp.0).abs().max((gm.1 - gp.1).abs()).max((gm.2 - gp.2).abs());
        let advance = |samples: &[IsotracalSample], guess: (f64, f64, f64)| {
            let pt = solve_isotracal_point(p, guess, next).ok()?;
            let dev = (pt.a - guess.0).abs().max((pt.x - guess.1).abs()).max((pt.y - guess.2).abs());
            (dev <= max_deviation(samples, next).min(0.25 * apart + 1e-12)).then_some(pt)
        };
        let solved = advance(&minus, gm).and_then(|sm| Some((sm, advance(&plus, gp)?)));
        match solved {
            Some((sm, sp)) => {
                minus.push(sm.into());
                plus.push(sp.into());
                b = next;
                if sm.iterations.max(sp.iterations) <= opts.easy_iterations {
                    easy += 1;
                    if easy >= opts.easy_streak {
                        h = (2.0 * h).min(opts.max_step);
                        easy = 0;
                    }
                } else {
                    easy = 0;
                }
            }
            None => {
                h *= 0.5;
                easy = 0;
                if h < opts.min_step {
                    break StopReason::StepUnderflow;
                }
            }
        }
    };
    let met = stop == StopReason::Met;
    let meet_b = met.then_some(b);
    let path = |branch, samples| IsotracalPath { period: p, branch, samples, met, meet_b, stop };
    Ok((path(Branch::Minus, minus), path(Branch::Plus, plus)))
}

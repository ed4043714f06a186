//! Superattracting parameters of the quadratic family `f_a(x) = a − x²`.
//!
//! Long critical orbits lose about `log10 |d f_a^p(0) / da|` digits in plain
//! `f64`, so the Newton polish and the residual use double-double arithmetic.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use twofloat::TwoFloat;

use crate::perm::{kneading_cmp, Itinerary, Symbol};

/// Distance from 0 at which an iterate counts as the critical point.
pub const CRITICAL_TOLERANCE: f64 = 1e-13;
/// Bracket right of the period-3 window.
pub const DEFAULT_BRACKET: (f64, f64) = (1.401, 2.0);
pub const FULL_BRACKET: (f64, f64) = (-0.25, 2.0);
pub const MAX_RESIDUAL: f64 = 1e-12;

const BISECTION_WIDTH: f64 = 1e-13;
const NEWTON_STEPS: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadError {
    #[error("itinerary `{0}` is not periodic with a single trailing C")]
    NotPeriodic(String),
    #[error("itinerary `{0}` is not the kneading sequence of any parameter")]
    Inadmissible(String),
    #[error("`{word}` is not bracketed by [{lo}, {hi}]")]
    NoBracket { word: String, lo: f64, hi: f64 },
    #[error("critical orbit of a = {a} escapes at step {step}")]
    Unbounded { a: f64, step: usize },
    #[error("residual {residual:e} too large at a = {a}")]
    Residual { a: f64, residual: f64 },
    #[error("polished parameter {a} has itinerary {found}, not {wanted}")]
    WrongItinerary { a: f64, wanted: String, found: String },
}

pub type Result<T> = std::result::Result<T, QuadError>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadParam {
    pub a: f64,
    /// Low word of the double-double parameter; `a + a_lo` is the root.
    pub a_lo: f64,
    pub period: usize,
    pub itinerary: Itinerary,
    /// `|f_a^p(0)|` at `a + a_lo`.
    pub residual: f64,
}

impl QuadParam {
    fn precise(&self) -> TwoFloat {
        TwoFloat::from(self.a) + TwoFloat::from(self.a_lo)
    }

    /// Critical itinerary evaluated at the double-double parameter.
    pub fn kneading(&self) -> Itinerary {
        let a = self.precise();
        let mut x = TwoFloat::from(0.0);
        let mut word = Vec::with_capacity(self.period);
        for _ in 0..self.period {
            x = a - x * x;
            let s = symbol(f64::from(x));
            word.push(s);
            if s == Symbol::Critical {
                break;
            }
        }
        Itinerary(word)
    }
}

fn symbol(x: f64) -> Symbol {
    if x.abs() <= CRITICAL_TOLERANCE {
        Symbol::Critical
    } else if x < 0.0 {
        Symbol::Zero
    } else {
        Symbol::One
    }
}

fn bound(a: f64) -> f64 {
    2f64.max(a + 1.0) + 1e-9
}

/// Signs of `f_a^i(0)` for `i = 1..=length`, stopping early at `C`.
pub fn kneading(a: f64, length: usize) -> Result<Itinerary> {
    let mut x = 0.0f64;
    let mut word = Vec::with_capacity(length);
    for step in 1..=length {
        x = a - x * x;
        if x.abs() > bound(a) {
            return Err(QuadError::Unbounded { a, step });
        }
        let s = symbol(x);
        word.push(s);
        if s == Symbol::Critical {
            break;
        }
    }
    Ok(Itinerary(word))
}

/// `length` symbols without stopping at `C`, for bisection.
fn symbols(a: f64, length: usize) -> Vec<Symbol> {
    let mut x = 0.0f64;
    (0..length)
        .map(|_| {
            x = a - x * x;
            symbol(x)
        })
        .collect()
}

/// A periodic critical word is a kneading sequence exactly when the critical
/// value has the largest itinerary on its orbit.
pub fn is_admissible(word: &Itinerary) -> bool {
    if !word.is_periodic_critical() {
        return false;
    }
    let w = word.symbols();
    let p = w.len();
    let shift = |k: usize| (0..p).map(|i| w[(k + i) % p]).collect::<Vec<_>>();
    (1..p).all(|k| kneading_cmp(&shift(k), w) == Ordering::Less)
}

/// `(f_a^p(0), d/da f_a^p(0))`.
fn orbit_end(a: TwoFloat, p: usize) -> (TwoFloat, f64) {
    let mut x = TwoFloat::from(0.0);
    let mut dx = 0.0f64;
    for _ in 0..p {
        dx = 1.0 - 2.0 * f64::from(x) * dx;
        x = a - x * x;
    }
    (x, dx)
}

pub fn superattracting_parameter(word: &Itinerary) -> Result<QuadParam> {
    superattracting_parameter_in(word, DEFAULT_BRACKET)
}

/// The parameter whose critical orbit has itinerary `word`, searched in
/// `bracket`.
pub fn superattracting_parameter_in(word: &Itinerary, bracket: (f64, f64)) -> Result<QuadParam> {
    if !word.is_periodic_critical() {
        return Err(QuadError::NotPeriodic(word.to_string()));
    }
    if !is_admissible(word) {
        return Err(QuadError::Inadmissible(word.to_string()));
    }
    let w = word.symbols();
    let p = w.len();
    let cmp = |a: f64| kneading_cmp(&symbols(a, p), w);

    let (mut lo, mut hi) = bracket;
    let no_bracket = || QuadError::NoBracket { word: word.to_string(), lo: bracket.0, hi: bracket.1 };
    if cmp(lo) != Ordering::Less || cmp(hi) != Ordering::Greater {
        return Err(no_bracket());
    }
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        match cmp(mid) {
            Ordering::Less => lo = mid,
            Ordering::Greater => hi = mid,
            Ordering::Equal => {
                lo = mid;
                hi = mid;
            }
        }
    }

    let mut a = TwoFloat::from(0.5 * (lo + hi));
    for _ in 0..NEWTON_STEPS {
        let (g, dg) = orbit_end(a, p);
        if dg == 0.0 {
            break;
        }
        let step = g / dg;
        a -= step;
        if f64::from(step).abs() < 1e-30 {
            break;
        }
    }
    let residual = f64::from(orbit_end(a, p).0).abs();
    let param = QuadParam { a: a.hi(), a_lo: a.lo(), period: p, itinerary: word.clone(), residual };
    if residual >= MAX_RESIDUAL {
        return Err(QuadError::Residual { a: param.a, residual });
    }
    let found = param.kneading();
    if &found != word {
        return Err(QuadError::WrongItinerary {
            a: param.a,
            wanted: word.to_string(),
            found: found.to_string(),
        });
    }
    Ok(param)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn it(s: &str) -> Itinerary {
        s.parse().unwrap()
    }

    #[test]
    fn kneading_examples() {
        assert_eq!(kneading(2.0, 4).unwrap().to_string(), "1000");
        assert_eq!(kneading(1.0, 6).unwrap().to_string(), "1C");
        assert_eq!(kneading(1.7549, 3).unwrap().to_string(), "100");
        assert!(matches!(kneading(2.5, 5), Err(QuadError::Unbounded { .. })));
    }

    #[test]
    fn period_two_and_three() {
        let q = superattracting_parameter_in(&it("1C"), FULL_BRACKET).unwrap();
        assert!((q.a - 1.0).abs() < 1e-15);
        let q = superattracting_parameter_in(&it("10C"), FULL_BRACKET).unwrap();
        // a³ − 2a² + a − 1 = 0
        let a = q.a;
        assert!((a * a * a - 2.0 * a * a + a - 1.0).abs() < 1e-13);
        assert!(matches!(superattracting_parameter(&it("1C")), Err(QuadError::NoBracket { .. })));
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&it("1001C")));
        assert!(is_admissible(&it("C")));
        assert!(!is_admissible(&it("0C")));
        assert!(!is_admissible(&it("11C")));
        assert!(matches!(superattracting_parameter(&it("11C")), Err(QuadError::Inadmissible(_))));
        assert!(matches!(superattracting_parameter(&it("10")), Err(QuadError::NotPeriodic(_))));
    }

    #[test]
    fn first_table_value() {
        let q = superattracting_parameter(&it("1001010C")).unwrap();
        assert!((q.a - 1.85173004941).abs() < 1e-9);
        assert!(q.residual < MAX_RESIDUAL);
    }
}

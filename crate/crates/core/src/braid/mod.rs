//! Braid words, permutation braids and the word problem.
//!
//! Generator `σ_i` (written `i`, 1-based) crosses the strands in positions
//! `i - 1` and `i`. Words read left to right. A permutation `π` of positions
//! describes where the strand starting at `x` ends: `π[x]`.

mod dynnikov;
mod garside;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::UnimodalPermutation;

pub use dynnikov::{dynnikov_equal, DynnikovState};
pub use garside::{normal_form, LeftNormalForm};
pub use verify::{relate, verify_pair, VerificationReport, VerifyError, MAX_CENTRAL_POWER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("cannot parse braid letter {0:?}")]
    Parse(String),
    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },
    #[error("need at least one strand")]
    NoStrands,
    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),
    #[error("Dynnikov coordinates overflowed")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, BraidError>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(BraidError::NoStrands);
        }
        for &letter in &letters {
            if letter == 0 || letter.unsigned_abs() as usize >= strands {
                return Err(BraidError::LetterOutOfRange { letter, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        Self { strands: strands.max(1), letters: Vec::new() }
    }

    pub fn generator(strands: usize, letter: i32) -> Result<Self> {
        Self::new(strands, vec![letter])
    }

    /// Parses whitespace-separated signed generator indices, e.g. `"1 -2 1"`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let letters = text
            .split_whitespace()
            .map(|tok| tok.parse::<i32>().map_err(|_| BraidError::Parse(tok.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    pub fn inverse(&self) -> Self {
        Self { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    /// `Δ^k`, the `k`-th power of the positive half twist.
    pub fn delta_power(strands: usize, k: i64) -> Self {
        let delta = permutation_braid(&(0..strands).rev().collect::<Vec<_>>());
        let mut word = Self::identity(strands);
        let unit = if k >= 0 { delta } else { delta.inverse() };
        for _ in 0..k.unsigned_abs() {
            word.letters.extend_from_slice(&unit.letters);
        }
        word
    }

    /// Permutation of positions induced by the word.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            at.swap(i - 1, i);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.letters {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    /// Strand count is taken as one more than the largest generator index.
    fn from_str(s: &str) -> Result<Self> {
        let probe = BraidWord::parse(usize::MAX, s)?;
        let strands = probe.letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1);
        Ok(Self { strands, letters: probe.letters })
    }
}

pub fn exponent_sum(w: &BraidWord) -> i64 {
    w.letters.iter().map(|&l| l.signum() as i64).sum()
}

/// Positive braid in which every pair of strands crosses at most once and
/// strand `x` ends at `perm[x]`.
///
/// Built left-greedily: at each step the leftmost adjacent pair that still
/// has to cross does so.
pub fn permutation_braid(perm: &[usize]) -> BraidWord {
    let n = perm.len();
    let mut at: Vec<usize> = (0..n).collect();
    let mut letters = Vec::new();
    'outer: loop {
        for i in 1..n {
            if perm[at[i - 1]] > perm[at[i]] {
                at.swap(i - 1, i);
                letters.push(i as i32);
                continue 'outer;
            }
        }
        break;
    }
    BraidWord { strands: n.max(1), letters }
}

/// The positive direct braid inducing `υ`.
pub fn unimodal_braid(perm: &UnimodalPermutation) -> BraidWord {
    permutation_braid(perm.images())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cyclic;

    #[test]
    fn parse_and_print() {
        let w = BraidWord::parse(3, "1 -2 1").unwrap();
        assert_eq!(w.letters(), &[1, -2, 1]);
        assert_eq!(w.to_string(), "1 -2 1");
        assert_eq!(BraidWord::parse(3, "3"), Err(BraidError::LetterOutOfRange { letter: 3, strands: 3 }));
        assert_eq!(BraidWord::parse(3, "0"), Err(BraidError::LetterOutOfRange { letter: 0, strands: 3 }));
        assert!(matches!(BraidWord::parse(3, "1 a"), Err(BraidError::Parse(_))));
        let w: BraidWord = "2 -3".parse().unwrap();
        assert_eq!(w.strands(), 4);
    }

    #[test]
    fn main_example_braid() {
        let v = parse_cyclic("2,3,0,4,1").unwrap();
        let b = unimodal_braid(&v);
        assert!(b.is_positive());
        assert_eq!(b.len(), 6);
        assert_eq!(b.permutation(), v.images());
        assert_eq!(exponent_sum(&b), 6);
    }

    #[test]
    fn identity_gives_empty_word() {
        assert!(permutation_braid(&[0, 1, 2, 3]).is_empty());
    }

    #[test]
    fn delta_squares_to_full_twist() {
        let d = BraidWord::delta_power(4, 1);
        assert_eq!(d.len(), 6);
        assert_eq!(d.permutation(), vec![3, 2, 1, 0]);
        assert_eq!(exponent_sum(&BraidWord::delta_power(4, -2)), -12);
    }
}

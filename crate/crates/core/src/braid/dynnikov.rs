//! Dynnikov coordinates: an integer action of `B_n` on laminations of the
//! punctured disk, faithful on the standard curve diagram.

use serde::{Deserialize, Serialize};

use super::{BraidError, BraidWord, Result};

/// Coordinates `(a_1, b_1, …, a_n, b_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DynnikovState {
    pub coords: Vec<i128>,
}

fn pos(x: i128) -> i128 {
    x.max(0)
}

fn neg(x: i128) -> i128 {
    x.min(0)
}

impl DynnikovState {
    /// The standard curve diagram `(0, 1, 0, 1, …)`.
    pub fn standard(strands: usize) -> Self {
        let mut coords = vec![0; 2 * strands];
        for k in 0..strands {
            coords[2 * k + 1] = 1;
        }
        Self { coords }
    }

    pub fn strands(&self) -> usize {
        self.coords.len() / 2
    }

    fn act_letter(&mut self, letter: i32) -> Result<()> {
        let i = letter.unsigned_abs() as usize - 1;
        let (a1, b1, a2, b2) =
            (self.coords[2 * i], self.coords[2 * i + 1], self.coords[2 * i + 2], self.coords[2 * i + 3]);
        let m = [a1, b1, a2, b2].iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
        if m.checked_mul(16).is_none_or(|x| x > i128::MAX as u128) {
            return Err(BraidError::Overflow);
        }
        let out = if letter > 0 {
            let t = a1 - neg(b1) - a2 + pos(b2);
            [
                a1 + pos(b1) + pos(pos(b2) - t),
                b2 - pos(t),
                a2 + neg(b2) + neg(neg(b1) + t),
                b1 + pos(t),
            ]
        } else {
            let t = a1 + neg(b1) - a2 - pos(b2);
            [
                a1 - pos(b1) - pos(pos(b2) + t),
                b2 + neg(t),
                a2 - neg(b2) - neg(neg(b1) - t),
                b1 - neg(t),
            ]
        };
        self.coords[2 * i..2 * i + 4].copy_from_slice(&out);
        Ok(())
    }

    pub fn act(&mut self, w: &BraidWord) -> Result<()> {
        if w.strands() != self.strands() {
            return Err(BraidError::StrandMismatch(w.strands(), self.strands()));
        }
        for &l in w.letters() {
            self.act_letter(l)?;
        }
        Ok(())
    }
}

pub fn dynnikov_equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    if w1.strands() != w2.strands() {
        return Err(BraidError::StrandMismatch(w1.strands(), w2.strands()));
    }
    let mut s1 = DynnikovState::standard(w1.strands());
    let mut s2 = s1.clone();
    s1.act(w1)?;
    s2.act(w2)?;
    Ok(s1 == s2)
}

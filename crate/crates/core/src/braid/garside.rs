use std::fmt;

use serde::{Deserialize, Serialize};

use super::{permutation_braid, BraidWord};

/// Left normal form `Δ^k · f1 · f2 · …`, each factor a permutation braid
/// given by its permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeftNormalForm {
    pub strands: usize,
    pub delta_power: i64,
    pub factors: Vec<Vec<usize>>,
}

impl LeftNormalForm {
    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// Number of non-`Δ` factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn to_word(&self) -> BraidWord {
        let mut letters = BraidWord::delta_power(self.strands, self.delta_power).letters;
        for f in &self.factors {
            letters.extend(permutation_braid(f).letters);
        }
        BraidWord { strands: self.strands, letters }
    }
}

impl fmt::Display for LeftNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}", self.delta_power)?;
        for factor in &self.factors {
            f.write_str(" |")?;
            for x in factor {
                write!(f, " {x}")?;
            }
        }
        Ok(())
    }
}

fn transposition(n: usize, i: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (0..n).collect();
    s.swap(i - 1, i);
    s
}

fn flip(p: &[usize]) -> Vec<usize> {
    let n = p.len();
    (0..n).map(|x| n - 1 - p[n - 1 - x]).collect()
}

fn is_delta(p: &[usize]) -> bool {
    let n = p.len();
    p.iter().enumerate().all(|(x, &y)| y == n - 1 - x)
}

fn is_trivial(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(x, &y)| x == y)
}

/// Generators `i` with `a = a'·σ_i`: strands ending at `i - 1`, `i` crossed.
fn finishes_with(a: &[usize], i: usize) -> bool {
    let l = a.iter().position(|&y| y == i - 1).unwrap();
    let r = a.iter().position(|&y| y == i).unwrap();
    l > r
}

/// Generators `i` with `b = σ_i·b'`: strands starting at `i - 1`, `i` cross.
fn starts_with(b: &[usize], i: usize) -> bool {
    b[i - 1] > b[i]
}

/// Moves crossings from the front of `b` onto the back of `a` until the pair
/// is left-weighted. Returns whether anything moved.
fn left_weight(a: &mut [usize], b: &mut [usize]) -> bool {
    let n = a.len();
    let mut moved = false;
    loop {
        let Some(i) = (1..n).find(|&i| starts_with(b, i) && !finishes_with(a, i)) else {
            return moved;
        };
        for y in a.iter_mut() {
            if *y == i - 1 {
                *y = i;
            } else if *y == i {
                *y = i - 1;
            }
        }
        b.swap(i - 1, i);
        moved = true;
    }
}

pub fn normal_form(w: &BraidWord) -> LeftNormalForm {
    let n = w.strands();
    let delta: Vec<usize> = (0..n).rev().collect();
    // Each letter as Δ^e · simple; σ_i⁻¹ = Δ⁻¹ · (Δσ_i⁻¹).
    let mut pieces: Vec<Vec<usize>> = Vec::with_capacity(w.len());
    let mut exps: Vec<i64> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        let s = transposition(n, l.unsigned_abs() as usize);
        if l > 0 {
            pieces.push(s);
            exps.push(0);
        } else {
            pieces.push(delta.iter().map(|&x| s[x]).collect());
            exps.push(-1);
        }
    }
    // S·Δ^e = Δ^e·τ^e(S): push every Δ to the front.
    let mut power = 0i64;
    for j in (0..pieces.len()).rev() {
        if power % 2 != 0 {
            pieces[j] = flip(&pieces[j]);
        }
        power += exps[j];
    }

    let mut factors: Vec<Vec<usize>> = Vec::new();
    for piece in pieces {
        factors.push(piece);
        let mut j = factors.len() - 1;
        while j > 0 {
            let (head, tail) = factors.split_at_mut(j);
            if !left_weight(&mut head[j - 1], &mut tail[0]) {
                break;
            }
            j -= 1;
        }
        while factors.first().is_some_and(|f| is_delta(f)) {
            factors.remove(0);
            power += 1;
        }
        while factors.last().is_some_and(|f| is_trivial(f)) {
            factors.pop();
        }
    }
    LeftNormalForm { strands: n, delta_power: power, factors }
}

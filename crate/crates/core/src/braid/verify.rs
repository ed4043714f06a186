//! Checking the relation a pair of unimodal braids is claimed to satisfy.
//!
//! Products are written as composites: in `β₋·γ` the braid `γ` acts first,
//! so as a word (left to right) it reads `γ β₋`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{normal_form, unimodal_braid, BraidWord, LeftNormalForm};
use crate::cabling::{EquivalencePair, Relation};
use crate::perm::{PermError, UnimodalPermutation};

/// Largest `|k|` tried for a central correction `Δ^{2k}`.
pub const MAX_CENTRAL_POWER: i64 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("periods differ: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("fold and time {0} are not adjacent in both permutations")]
    NotAdjacent(usize),
    #[error("neither relation holds, even up to the centre")]
    NoRelation,
    #[error("pair claims {claimed:?} but {found:?} holds")]
    WrongRelation { claimed: Relation, found: Relation },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub relation: Relation,
    /// `k` with the identity holding after multiplying by `Δ^{2k}`.
    pub central_power: i64,
    /// Index of the generator `γ = σ_j`.
    pub generator: usize,
    pub minus_braid: BraidWord,
    pub plus_braid: BraidWord,
}

fn nf(words: &[&BraidWord]) -> LeftNormalForm {
    let mut letters = Vec::new();
    for w in words {
        letters.extend_from_slice(w.letters());
    }
    normal_form(&BraidWord::new(words[0].strands(), letters).expect("same strand count"))
}

/// Determines which relation ties the unimodal braids of `minus` and `plus`,
/// where time `d` sits on either side of the fold.
pub fn relate(
    minus: &UnimodalPermutation,
    plus: &UnimodalPermutation,
    d: usize,
) -> Result<VerificationReport, VerifyError> {
    let n = minus.period();
    if plus.period() != n {
        return Err(VerifyError::PeriodMismatch(n, plus.period()));
    }
    let cm = minus.cyclic()?;
    let cp = plus.cyclic()?;
    let (m0, md) = (cm.position_of(0), cm.position_of(d));
    let (p0, pd) = (cp.position_of(0), cp.position_of(d));
    if md + 1 != m0 || p0 + 1 != pd || m0 != pd {
        return Err(VerifyError::NotAdjacent(d));
    }
    let j = m0;
    let bm = unimodal_braid(minus);
    let bp = unimodal_braid(plus);
    let g = BraidWord::generator(n, j as i32).expect("interior generator");
    let gi = g.inverse();

    let lhs = nf(&[&g, &bm]);
    let conj = nf(&[&bp, &g]);
    let rev = nf(&[&bp, &gi]);
    let mut powers: Vec<i64> = vec![0];
    for k in 1..=MAX_CENTRAL_POWER {
        powers.extend([k, -k]);
    }
    for k in powers {
        let shift = |f: &LeftNormalForm| {
            let mut f = f.clone();
            f.delta_power += 2 * k;
            f
        };
        for (relation, rhs) in [(Relation::Conjugate, &conj), (Relation::ReverseConjugate, &rev)] {
            if shift(&lhs) == *rhs {
                return Ok(VerificationReport {
                    relation,
                    central_power: k,
                    generator: j,
                    minus_braid: bm,
                    plus_braid: bp,
                });
            }
        }
    }
    Err(VerifyError::NoRelation)
}

/// Verifies a generated pair and checks the relation it records.
pub fn verify_pair(pair: &EquivalencePair) -> Result<VerificationReport, VerifyError> {
    let report = relate(&pair.minus, &pair.plus, pair.distinguishing_time)?;
    if report.relation != pair.relation {
        return Err(VerifyError::WrongRelation { claimed: pair.relation, found: report.relation });
    }
    Ok(report)
}

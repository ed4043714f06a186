//! Cabling constructions producing braid-equivalent pairs of unimodal
//! permutations, and chains of such pairs.
//!
//! Both constructions work purely on spatial orders. New orbit points are
//! slotted beside existing ones using integer keys (`4 * index ± 1`), so an
//! insertion never renumbers the points around it until the final sort.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{
    self, is_reconnectable_nondyn, pair_properties, rho, to_itinerary, Itinerary, PairError,
    PairReport, PermError, Side, Slot, UnimodalPermutation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CablingError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("{0} is not reconnectable at the non-dynamical preimage")]
    NotReconnectable(String),
    #[error("reconnection endpoint {0} is not usable")]
    BadEndpoint(usize),
    #[error("constructed permutation is not unimodal: {0}")]
    NotUnimodal(String),
    #[error("no placement of the returning point closes up unimodally")]
    NoUnimodalClosure,
    #[error("both placements of the returning point close up unimodally")]
    AmbiguousClosure,
}

pub type Result<T> = std::result::Result<T, CablingError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `β₋·γ = γ·β₊`
    Conjugate,
    /// `β₋·γ = γ⁻¹·β₊`
    ReverseConjugate,
}

/// Which reconnection endpoint `cable_nondyn` uses when both qualify.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EndpointChoice {
    #[default]
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalencePair {
    /// Distinguishing time left of the fold.
    pub minus: UnimodalPermutation,
    /// Distinguishing time right of the fold.
    pub plus: UnimodalPermutation,
    pub distinguishing_time: usize,
    pub relation: Relation,
    pub level: usize,
    pub head: Itinerary,
}

impl EquivalencePair {
    pub fn period(&self) -> usize {
        self.minus.period()
    }

    pub fn properties(&self) -> std::result::Result<PairReport, PairError> {
        pair_properties(&self.minus, &self.plus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub head: UnimodalPermutation,
    pub pairs: Vec<EquivalencePair>,
}

/// Sorts `(key, time)` points into cyclic notation and checks unimodality.
fn close_up(mut points: Vec<(i64, usize)>) -> Result<UnimodalPermutation> {
    points.sort_unstable();
    debug_assert!(points.windows(2).all(|w| w[0].0 != w[1].0), "slot keys collide");
    let times: Vec<usize> = points.into_iter().map(|(_, t)| t).collect();
    UnimodalPermutation::from_cyclic(&times).map_err(|e| match e {
        PermError::NotUnimodal(msg) => CablingError::NotUnimodal(msg),
        other => other.into(),
    })
}

fn beside(index: usize, side: Side) -> i64 {
    let k = 4 * index as i64;
    match side {
        Side::Left => k - 1,
        Side::Right => k + 1,
    }
}

fn parity_side(parity: usize) -> Side {
    if parity % 2 == 0 {
        Side::Left
    } else {
        Side::Right
    }
}

/// Generalised cabling at the non-dynamical preimage, using the left
/// reconnection endpoint when both qualify.
pub fn cable_nondyn(perm: &UnimodalPermutation) -> Result<EquivalencePair> {
    cable_nondyn_with(perm, EndpointChoice::Left)
}

/// Generalised cabling at the non-dynamical preimage.
///
/// With `e = q - 1` the chosen endpoint of `E`, the orbit is broken after
/// time `p - 1` and rerouted through `r` (beside the fold) and companions
/// `r_1 … r_{q-1}` beside times `1 … q-1`, each on the side given by the
/// parity of `ρ(1, i)`, before returning to the fold. The two members differ
/// only in the side of the fold on which `r` is placed.
pub fn cable_nondyn_with(perm: &UnimodalPermutation, choice: EndpointChoice) -> Result<EquivalencePair> {
    let recon = is_reconnectable_nondyn(perm)?;
    let interval = match (&recon.interval, recon.is_reconnectable()) {
        (Some(iv), true) => *iv,
        _ => return Err(CablingError::NotReconnectable(perm.to_string())),
    };
    let endpoint = match choice {
        EndpointChoice::Left => recon.endpoints[0],
        EndpointChoice::Right => *recon.endpoints.last().unwrap(),
    };
    if endpoint == 0 {
        return Err(CablingError::BadEndpoint(endpoint));
    }
    let cyc = perm.cyclic()?;
    let p = perm.period();
    let m = perm.folding();

    let mut companions = Vec::with_capacity(endpoint);
    for i in 1..=endpoint {
        let side = if i == 1 { Side::Left } else { parity_side(rho(perm, 1, i)?) };
        companions.push((beside(cyc.position_of(i), side), p + i));
    }
    let base: Vec<(i64, usize)> =
        (0..p).map(|pos| (4 * pos as i64, cyc.time_at(pos))).collect();

    let build = |side: Side| {
        let mut pts = base.clone();
        pts.push((beside(m, side), p));
        pts.extend_from_slice(&companions);
        close_up(pts)
    };
    let minus = build(Side::Left)?;
    let plus = build(Side::Right)?;
    let relation = match interval.side(perm)? {
        Some(Side::Left) => Relation::Conjugate,
        _ => Relation::ReverseConjugate,
    };
    Ok(EquivalencePair {
        minus,
        plus,
        distinguishing_time: p,
        relation,
        level: 0,
        head: to_itinerary(perm)?,
    })
}

/// Second-closest-return cabling.
///
/// The orbit is broken at the dynamical preimage `N - 1` of the fold and
/// rerouted through `r_0` (just outside the straddle interval `C`) and
/// companions `r_1 … r_{t+1}` beside `p+1 … p+t+1`, with `r_1` on the left
/// and later sides following the parity of `ρ(p+1, p+i)`, before returning to
/// the fold. Both placements of `r_0` are tried; exactly one must close up
/// unimodally in both members.
pub fn cable_second_return(pair: &EquivalencePair) -> Result<EquivalencePair> {
    let report = pair.properties()?;
    let n = report.period;
    let p = report.distinguishing_time;
    let t = report.transit_time;

    let mut companions = Vec::with_capacity(t + 1);
    for i in 1..=t + 1 {
        let side = if i == 1 { Side::Left } else { parity_side(rho(&pair.minus, p + 1, p + i)?) };
        companions.push((beside(report.shared(p + i), side), n + i));
    }
    let c_lo = report.merged_index(Slot::Minus(p));
    let c_hi = report.merged_index(Slot::Plus(p));

    let member = |skip: Slot, r0: i64| {
        let mut pts: Vec<(i64, usize)> = report
            .merged
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != skip)
            .map(|(k, s)| {
                let time = match *s {
                    Slot::Shared(t) | Slot::Minus(t) | Slot::Plus(t) => t,
                };
                (4 * k as i64, time)
            })
            .collect();
        pts.push((r0, n));
        pts.extend_from_slice(&companions);
        close_up(pts)
    };

    let mut closures = Vec::new();
    for r0 in [beside(c_lo, Side::Left), beside(c_hi, Side::Right)] {
        if let (Ok(minus), Ok(plus)) = (member(Slot::Plus(p), r0), member(Slot::Minus(p), r0)) {
            closures.push((minus, plus));
        }
    }
    let (minus, plus) = match closures.len() {
        0 => return Err(CablingError::NoUnimodalClosure),
        1 => closures.pop().unwrap(),
        _ => return Err(CablingError::AmbiguousClosure),
    };
    Ok(EquivalencePair {
        minus,
        plus,
        distinguishing_time: p,
        relation: pair.relation,
        level: pair.level + 1,
        head: pair.head.clone(),
    })
}

/// Level 0 from [`cable_nondyn`], levels `1..=depth` from
/// [`cable_second_return`]; every pair is revalidated.
pub fn generate_chain(head: &UnimodalPermutation, depth: usize) -> Result<Chain> {
    let mut pairs = Vec::with_capacity(depth + 1);
    let mut pair = cable_nondyn(head)?;
    pair.properties()?;
    for _ in 0..depth {
        let next = cable_second_return(&pair)?;
        next.properties()?;
        pairs.push(pair);
        pair = next;
    }
    pairs.push(pair);
    Ok(Chain { head: head.clone(), pairs })
}

/// Deletes every orbit time `>= period` and relabels.
pub fn collapse(perm: &UnimodalPermutation, period: usize) -> perm::Result<Vec<usize>> {
    Ok(perm.cyclic()?.times().iter().copied().filter(|&t| t < period).collect())
}

// ----------------------------------------------------------------------------
// Serialisation

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub period: usize,
    pub minus: String,
    pub plus: String,
    pub relation: Relation,
    pub distinguishing_time: usize,
    pub transit_time: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDocument {
    pub head: Itinerary,
    pub levels: Vec<LevelRecord>,
}

impl Chain {
    pub fn to_document(&self) -> Result<ChainDocument> {
        let levels = self
            .pairs
            .iter()
            .map(|pair| {
                let report = pair.properties()?;
                Ok(LevelRecord {
                    period: pair.period(),
                    minus: pair.minus.to_string(),
                    plus: pair.plus.to_string(),
                    relation: pair.relation,
                    distinguishing_time: pair.distinguishing_time,
                    transit_time: report.transit_time,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ChainDocument { head: to_itinerary(&self.head)?, levels })
    }
}

impl ChainDocument {
    /// Rebuilds the pairs; the distinguishing time is recomputed from the
    /// permutations, the relation is taken as recorded.
    pub fn pairs(&self) -> Result<Vec<EquivalencePair>> {
        self.levels
            .iter()
            .enumerate()
            .map(|(level, rec)| {
                let minus = perm::parse_cyclic(&rec.minus)?;
                let plus = perm::parse_cyclic(&rec.plus)?;
                let distinguishing_time = perm::distinguishing_time(&minus, &plus)?;
                Ok(EquivalencePair {
                    minus,
                    plus,
                    distinguishing_time,
                    relation: rec.relation,
                    level,
                    head: self.head.clone(),
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{from_itinerary, parse_cyclic};

    fn head(w: &str) -> UnimodalPermutation {
        from_itinerary(&w.parse().unwrap()).unwrap()
    }

    #[test]
    fn first_construction_example() {
        let pair = cable_nondyn(&parse_cyclic("2,3,0,4,1").unwrap()).unwrap();
        assert_eq!(pair.minus.to_string(), "2,7,3,5,0,4,6,1");
        assert_eq!(pair.plus.to_string(), "2,7,3,0,5,4,6,1");
        assert_eq!(pair.relation, Relation::Conjugate);
        assert_eq!(pair.distinguishing_time, 5);
    }

    #[test]
    fn first_construction_other_heads() {
        let pair = cable_nondyn(&head("10011C")).unwrap();
        assert_eq!(pair.minus.to_string(), "2,8,3,6,0,4,5,7,1");
        assert_eq!(pair.plus.to_string(), "2,8,3,0,6,4,5,7,1");
        let pair = cable_nondyn(&head("10011001C")).unwrap();
        assert_eq!(pair.minus.to_string(), "2,11,6,15,3,12,7,9,0,4,13,8,14,5,10,1");
        assert_eq!(pair.plus.to_string(), "2,11,6,15,3,12,7,0,9,4,13,8,14,5,10,1");
    }

    #[test]
    fn non_reconnectable_heads_rejected() {
        let err = cable_nondyn(&parse_cyclic("2,0,3,1").unwrap()).unwrap_err();
        assert!(matches!(err, CablingError::NotReconnectable(_)));
        let err = cable_nondyn(&parse_cyclic("2,7,3,8,0,5,4,9,6,1").unwrap()).unwrap_err();
        assert!(matches!(err, CablingError::NotReconnectable(_)));
    }

    #[test]
    fn second_construction_levels() {
        let l0 = cable_nondyn(&head("1001C")).unwrap();
        let l1 = cable_second_return(&l0).unwrap();
        assert_eq!(l1.minus.to_string(), "2,7,10,3,8,5,0,4,9,6,1");
        assert_eq!(l1.plus.to_string(), "2,7,10,3,8,0,5,4,9,6,1");
        let l2 = cable_second_return(&l1).unwrap();
        assert_eq!(l2.minus.to_string(), "2,7,13,10,3,8,5,0,11,4,9,12,6,1");
        assert_eq!(l2.plus.to_string(), "2,7,13,10,3,8,0,5,11,4,9,12,6,1");
        assert_eq!(l2.level, 2);
        assert_eq!(l2.relation, l0.relation);
        assert_eq!(l2.distinguishing_time, 5);
    }

    #[test]
    fn chain_periods() {
        let periods = |w: &str, depth| -> Vec<usize> {
            generate_chain(&head(w), depth).unwrap().pairs.iter().map(|p| p.period()).collect()
        };
        assert_eq!(periods("1001C", 3), vec![8, 11, 14, 17]);
        assert_eq!(periods("1001111C", 3), vec![11, 14, 17, 20]);
        assert_eq!(periods("10011001C", 3), vec![16, 23, 30, 37]);
        assert_eq!(periods("1001C", 0), vec![8]);
        assert_eq!(periods("1001C", 6), vec![8, 11, 14, 17, 20, 23, 26]);
    }

    #[test]
    fn collapse_recovers_input() {
        let h = head("1001C");
        let chain = generate_chain(&h, 3).unwrap();
        let h_times = h.cyclic().unwrap().times().to_vec();
        assert_eq!(collapse(&chain.pairs[0].minus, 5).unwrap(), h_times);
        for w in chain.pairs.windows(2) {
            let n = w[0].period();
            assert_eq!(collapse(&w[1].minus, n).unwrap(), w[0].minus.cyclic().unwrap().times());
            assert_eq!(collapse(&w[1].plus, n).unwrap(), w[0].plus.cyclic().unwrap().times());
        }
    }

    #[test]
    fn document_round_trip() {
        let chain = generate_chain(&head("10011C"), 2).unwrap();
        let doc = chain.to_document().unwrap();
        let json = serde_json::to_string(&doc).unwrap();
        assert!(json.contains("\"relation\":\"conjugate\"") || json.contains("reverse_conjugate"));
        let back: ChainDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.pairs().unwrap(), chain.pairs);
    }
}

//! Cyclic unimodal permutations and the combinatorics of their critical orbit.
//!
//! Orbit points are named by their *orbit time* (the number of iterates of the
//! folding point needed to reach them) and located by their *position* in the
//! spatial order. [`CyclicNotation`] converts between the two; every interval
//! computation below is carried out on positions and reported back in times.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("could not parse `{0}` as a list of orbit times")]
    Parse(String),
    #[error("{0:?} is not a bijection of 0..{1}")]
    NotBijection(Vec<usize>, usize),
    #[error("permutation is not unimodal: {0}")]
    NotUnimodal(String),
    #[error("permutation is not a single cycle")]
    NotCyclic,
    #[error("orbit time {0} out of range for period {1}")]
    TimeOutOfRange(usize, usize),
    #[error("passage from {0} to {1} passes through the folding point")]
    PassageHitsFold(usize, usize),
    #[error("the folding point has no opposite")]
    OppositeOfFold,
    #[error("itinerary `{0}` is not periodic with a single trailing C")]
    NotPeriodicItinerary(String),
    #[error("itinerary `{0}` is not realised by any cyclic unimodal permutation")]
    Inadmissible(String),
    #[error("bad itinerary symbol `{0}`")]
    BadSymbol(char),
}

pub type Result<T> = std::result::Result<T, PermError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Spatial order of a cyclic permutation: `times[pos]` is the orbit time of
/// the point at `pos`, `positions[time]` its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicNotation {
    times: Vec<usize>,
    positions: Vec<usize>,
}

impl CyclicNotation {
    pub fn new(times: Vec<usize>) -> Result<Self> {
        let positions = invert(&times)?;
        Ok(CyclicNotation { times, positions })
    }

    pub fn times(&self) -> &[usize] {
        &self.times
    }

    pub fn time_at(&self, pos: usize) -> usize {
        self.times[pos]
    }

    pub fn position_of(&self, time: usize) -> usize {
        self.positions[time]
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

impl fmt::Display for CyclicNotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_joined(f, &self.times)
    }
}

fn write_joined(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    for (k, x) in xs.iter().enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

fn invert(perm: &[usize]) -> Result<Vec<usize>> {
    let n = perm.len();
    let mut inv = vec![usize::MAX; n];
    for (i, &v) in perm.iter().enumerate() {
        if v >= n || inv[v] != usize::MAX {
            return Err(PermError::NotBijection(perm.to_vec(), n));
        }
        inv[v] = i;
    }
    Ok(inv)
}

/// A unimodal permutation in one-line form: `images[pos]` is the position
/// the point at `pos` is sent to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UnimodalPermutation {
    images: Vec<usize>,
    folding: usize,
    cycle: Option<CyclicNotation>,
}

impl UnimodalPermutation {
    /// Builds from one-line form. Cyclicity is detected, not required.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        invert(&images)?;
        if n < 3 {
            return Err(PermError::NotUnimodal(format!("period {n} has no interior folding point")));
        }
        let folding = images.iter().position(|&v| v == n - 1).unwrap();
        if folding == 0 || folding == n - 1 {
            return Err(PermError::NotUnimodal(format!(
                "maximum image attained at boundary position {folding}"
            )));
        }
        if images[..=folding].windows(2).any(|w| w[0] > w[1]) {
            return Err(PermError::NotUnimodal("not increasing left of the folding point".into()));
        }
        if images[folding..].windows(2).any(|w| w[0] < w[1]) {
            return Err(PermError::NotUnimodal("not decreasing right of the folding point".into()));
        }

        let mut times = vec![usize::MAX; n];
        let mut x = folding;
        let mut len = 0;
        loop {
            times[x] = len;
            len += 1;
            x = images[x];
            if x == folding {
                break;
            }
        }
        let cycle = if len == n { Some(CyclicNotation::new(times)?) } else { None };
        Ok(UnimodalPermutation { images, folding, cycle })
    }

    /// Builds from cyclic notation (orbit time of each position, left to right).
    pub fn from_cyclic(times: &[usize]) -> Result<Self> {
        let n = times.len();
        let positions = invert(times)?;
        let images: Vec<usize> = (0..n).map(|pos| positions[(times[pos] + 1) % n]).collect();
        let perm = Self::from_images(images)?;
        if times[perm.folding] != 0 {
            return Err(PermError::NotUnimodal(
                "orbit time 0 does not sit at the folding point".into(),
            ));
        }
        Ok(perm)
    }

    pub fn period(&self) -> usize {
        self.images.len()
    }

    pub fn folding(&self) -> usize {
        self.folding
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, pos: usize) -> usize {
        self.images[pos]
    }

    pub fn is_cyclic(&self) -> bool {
        self.cycle.is_some()
    }

    pub fn cyclic(&self) -> Result<&CyclicNotation> {
        self.cycle.as_ref().ok_or(PermError::NotCyclic)
    }

    /// Number of inverted pairs in one-line form.
    pub fn inversions(&self) -> usize {
        let n = self.period();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    fn check_time(&self, t: usize) -> Result<()> {
        if t >= self.period() {
            Err(PermError::TimeOutOfRange(t, self.period()))
        } else {
            Ok(())
        }
    }

    /// Side of the folding point on which orbit time `t` lies (`None` for the fold itself).
    pub fn side_of_time(&self, t: usize) -> Result<Option<Side>> {
        self.check_time(t)?;
        let pos = self.cyclic()?.position_of(t);
        Ok(match pos.cmp(&self.folding) {
            Ordering::Less => Some(Side::Left),
            Ordering::Equal => None,
            Ordering::Greater => Some(Side::Right),
        })
    }

    /// Removes orbit time `t` and relabels, keeping the remaining spatial and
    /// temporal orders. Returns the relabelled cyclic notation only, since the
    /// result need not be unimodal.
    pub fn delete_time(&self, t: usize) -> Result<Vec<usize>> {
        self.check_time(t)?;
        Ok(self
            .cyclic()?
            .times()
            .iter()
            .filter(|&&s| s != t)
            .map(|&s| if s > t { s - 1 } else { s })
            .collect())
    }
}

impl fmt::Display for UnimodalPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.cycle {
            Some(c) => c.fmt(f),
            None => {
                f.write_str("[")?;
                write_joined(f, &self.images)?;
                f.write_str("]")
            }
        }
    }
}

/// Parses cyclic notation, e.g. `"2,3,0,4,1"`. Whitespace is ignored.
pub fn parse_cyclic(text: &str) -> Result<UnimodalPermutation> {
    let times = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| PermError::Parse(text.to_string()))?;
    UnimodalPermutation::from_cyclic(&times)
}

/// Inverse of [`parse_cyclic`]: `"2,3,0,4,1"`.
pub fn print_cyclic(perm: &UnimodalPermutation) -> Result<String> {
    Ok(perm.cyclic()?.to_string())
}

impl FromStr for UnimodalPermutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self> {
        parse_cyclic(s)
    }
}

// ----------------------------------------------------------------------------
// Itineraries

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Zero,
    Critical,
    One,
}

impl Symbol {
    pub fn to_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::Critical => 'C',
            Symbol::One => '1',
        }
    }
}

impl TryFrom<char> for Symbol {
    type Error = PermError;

    fn try_from(c: char) -> Result<Symbol> {
        match c {
            '0' => Ok(Symbol::Zero),
            '1' => Ok(Symbol::One),
            'C' | 'c' => Ok(Symbol::Critical),
            other => Err(PermError::BadSymbol(other)),
        }
    }
}

/// Word over `{0, 1, C}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Itinerary(pub Vec<Symbol>);

impl Itinerary {
    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exactly one `C`, in final position.
    pub fn is_periodic_critical(&self) -> bool {
        match self.0.split_last() {
            Some((Symbol::Critical, rest)) => !rest.contains(&Symbol::Critical),
            _ => false,
        }
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|s| write!(f, "{}", s.to_char()))
    }
}

impl FromStr for Itinerary {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self> {
        s.trim().chars().map(Symbol::try_from).collect::<Result<Vec<_>>>().map(Itinerary)
    }
}

impl Serialize for Itinerary {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Itinerary {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Unimodal (parity-lexicographic) order on symbol sequences, compared over
/// their common length. A `1` reverses the order of everything after it.
pub fn kneading_cmp(a: &[Symbol], b: &[Symbol]) -> Ordering {
    let mut reversed = false;
    for (x, y) in a.iter().zip(b) {
        if x != y {
            let ord = x.cmp(y);
            return if reversed { ord.reverse() } else { ord };
        }
        if *x == Symbol::One {
            reversed = !reversed;
        }
    }
    Ordering::Equal
}

/// Itinerary of the critical orbit: symbol `i` (1-based) records the side of
/// the `i`-th iterate of the folding point; the last symbol is `C`.
pub fn to_itinerary(perm: &UnimodalPermutation) -> Result<Itinerary> {
    let cyc = perm.cyclic()?;
    let m = perm.folding();
    let p = perm.period();
    let mut word: Vec<Symbol> = (1..p)
        .map(|t| if cyc.position_of(t) < m { Symbol::Zero } else { Symbol::One })
        .collect();
    word.push(Symbol::Critical);
    Ok(Itinerary(word))
}

/// Realises a periodic critical itinerary as a cyclic unimodal permutation.
///
/// The spatial order of the orbit is recovered by comparing the shifted
/// itineraries of its points in the unimodal order; the word is rejected
/// unless that order is unimodal and reproduces the word.
pub fn from_itinerary(word: &Itinerary) -> Result<UnimodalPermutation> {
    if !word.is_periodic_critical() {
        return Err(PermError::NotPeriodicItinerary(word.to_string()));
    }
    let p = word.len();
    // symbol of orbit time t
    let sym = |t: usize| if t % p == 0 { Symbol::Critical } else { word.0[t % p - 1] };
    let shifted = |t: usize| (0..p).map(move |k| sym(t + k));

    let mut order: Vec<usize> = (0..p).collect();
    order.sort_by(|&i, &j| {
        let a: Vec<Symbol> = shifted(i).collect();
        let b: Vec<Symbol> = shifted(j).collect();
        kneading_cmp(&a, &b)
    });
    let perm = UnimodalPermutation::from_cyclic(&order)
        .map_err(|_| PermError::Inadmissible(word.to_string()))?;
    if &to_itinerary(&perm)? != word {
        return Err(PermError::Inadmissible(word.to_string()));
    }
    Ok(perm)
}

// ----------------------------------------------------------------------------
// Passages

/// Smallest `k > 0` with `υ^k(i) = j`.
pub fn first_passage(perm: &UnimodalPermutation, i: usize, j: usize) -> Result<usize> {
    perm.cyclic()?;
    perm.check_time(i)?;
    perm.check_time(j)?;
    let p = perm.period();
    let k = (j + p - i) % p;
    Ok(if k == 0 { p } else { k })
}

/// Number of points strictly right of the fold along the passage from `i` to
/// `j` (endpoint `j` excluded).
pub fn rho(perm: &UnimodalPermutation, i: usize, j: usize) -> Result<usize> {
    let kappa = first_passage(perm, i, j)?;
    let p = perm.period();
    let mut count = 0;
    for l in 0..kappa {
        let t = (i + l) % p;
        match perm.side_of_time(t)? {
            None => return Err(PermError::PassageHitsFold(i, j)),
            Some(Side::Right) => count += 1,
            Some(Side::Left) => {}
        }
    }
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReturnKind {
    /// Nearest orbit point left of the fold.
    Left,
    /// Nearest orbit point right of the fold.
    Right,
    /// The image of the time is the nearest orbit point below the maximum.
    ByImage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosestReturn {
    pub time: usize,
    pub kind: ReturnKind,
}

pub fn closest_return_times(perm: &UnimodalPermutation) -> Result<Vec<ClosestReturn>> {
    let cyc = perm.cyclic()?;
    let m = perm.folding();
    let p = perm.period();
    let mut out = vec![
        ClosestReturn { time: cyc.time_at(m - 1), kind: ReturnKind::Left },
        ClosestReturn { time: cyc.time_at(m + 1), kind: ReturnKind::Right },
    ];
    // (υ^{q+1}(m), υ(m)) empty means υ^{q+1}(m) sits at position p-2
    let next = cyc.time_at(p - 2);
    let q = (next + p - 1) % p;
    if q != 0 {
        out.push(ClosestReturn { time: q, kind: ReturnKind::ByImage });
    }
    Ok(out)
}

// ----------------------------------------------------------------------------
// Intervals

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IntervalKind {
    DynamicalPreimage,
    NonDynamicalPreimage,
    Straddle,
}

/// Closed interval between two orbit points, named by orbit time.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitInterval {
    pub left: usize,
    pub right: usize,
    pub kind: IntervalKind,
}

impl OrbitInterval {
    pub fn positions(&self, perm: &UnimodalPermutation) -> Result<(usize, usize)> {
        let cyc = perm.cyclic()?;
        Ok((cyc.position_of(self.left), cyc.position_of(self.right)))
    }

    /// Side of the fold the interval lies on; `None` if it straddles it.
    pub fn side(&self, perm: &UnimodalPermutation) -> Result<Option<Side>> {
        let (l, r) = self.positions(perm)?;
        let m = perm.folding();
        Ok(if r <= m {
            Some(Side::Left)
        } else if l >= m {
            Some(Side::Right)
        } else {
            None
        })
    }
}

/// Image of the closed position interval `[i, j]` under the piecewise-linear
/// extension, as a closed range of positions.
fn image_hull(perm: &UnimodalPermutation, i: usize, j: usize) -> (usize, usize) {
    let (a, b) = (perm.image(i), perm.image(j));
    let lo = a.min(b);
    if i <= perm.folding() && perm.folding() <= j {
        (lo, perm.period() - 1)
    } else {
        (lo, a.max(b))
    }
}

/// Intervals containing the dynamical and (when it exists) non-dynamical
/// preimage of the folding point.
pub fn preimage_intervals(
    perm: &UnimodalPermutation,
) -> Result<(OrbitInterval, Option<OrbitInterval>)> {
    let cyc = perm.cyclic()?;
    let p = perm.period();
    let m = perm.folding();
    let d = cyc.position_of(p - 1);
    let mut best_d: Option<(usize, usize)> = None;
    let mut best_e: Option<(usize, usize)> = None;
    for i in 0..p {
        for j in i + 1..p {
            let (lo, hi) = image_hull(perm, i, j);
            if !(lo < m && m < hi) {
                continue;
            }
            let slot = if i <= d && d <= j { &mut best_d } else { &mut best_e };
            if slot.is_none_or(|(a, b)| j - i < b - a) {
                *slot = Some((i, j));
            }
        }
    }
    let to_interval = |(i, j): (usize, usize), kind| OrbitInterval {
        left: cyc.time_at(i),
        right: cyc.time_at(j),
        kind,
    };
    // [d-1, d+1] always maps strictly over the fold
    let dyn_iv = to_interval(best_d.expect("dynamical interval exists"), IntervalKind::DynamicalPreimage);
    Ok((dyn_iv, best_e.map(|e| to_interval(e, IntervalKind::NonDynamicalPreimage))))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconnection {
    /// Interval containing the non-dynamical preimage, if any.
    pub interval: Option<OrbitInterval>,
    pub rho_left: Option<usize>,
    pub rho_right: Option<usize>,
    /// Endpoints satisfying the parity condition, left endpoint first.
    pub endpoints: Vec<usize>,
}

impl Reconnection {
    pub fn is_reconnectable(&self) -> bool {
        !self.endpoints.is_empty()
    }

    /// Preferred endpoint: the left one when both qualify.
    pub fn chosen(&self) -> Option<usize> {
        self.endpoints.first().copied()
    }
}

/// Reconnectability at the non-dynamical preimage: `E = [e⁻, e⁺]` exists and
/// `ρ(1, e⁻)` is odd or `ρ(1, e⁺)` is even.
pub fn is_reconnectable_nondyn(perm: &UnimodalPermutation) -> Result<Reconnection> {
    let (_, e) = preimage_intervals(perm)?;
    let Some(e) = e else {
        return Ok(Reconnection { interval: None, rho_left: None, rho_right: None, endpoints: vec![] });
    };
    let rho_left = rho(perm, 1, e.left).ok();
    let rho_right = rho(perm, 1, e.right).ok();
    let mut endpoints = Vec::new();
    if rho_left.is_some_and(|r| r % 2 == 1) {
        endpoints.push(e.left);
    }
    if rho_right.is_some_and(|r| r % 2 == 0) {
        endpoints.push(e.right);
    }
    Ok(Reconnection { interval: Some(e), rho_left, rho_right, endpoints })
}

/// A slot strictly between two adjacent positions: `Gap(g)` lies between
/// positions `g - 1` and `g` (`Gap(0)` is left of everything).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gap(pub usize);

/// The opposite of orbit time `t`: the virtual point on the other side of the
/// fold with the same image.
pub fn opposite(perm: &UnimodalPermutation, t: usize) -> Result<Gap> {
    perm.check_time(t)?;
    let x = perm.cyclic()?.position_of(t);
    let m = perm.folding();
    let p = perm.period();
    let v = perm.image(x);
    match x.cmp(&m) {
        Ordering::Equal => Err(PermError::OppositeOfFold),
        Ordering::Less => {
            // right branch, images decreasing
            let y = (m..p).find(|&y| perm.image(y) < v).unwrap_or(p);
            Ok(Gap(y))
        }
        Ordering::Greater => {
            // left branch, images increasing
            let y = (0..=m).rev().find(|&y| perm.image(y) < v);
            Ok(Gap(y.map_or(0, |y| y + 1)))
        }
    }
}

// ----------------------------------------------------------------------------
// Pairs

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("periods differ: {0} vs {1}")]
    PeriodMismatch(usize, usize),
    #[error("no orbit time distinguishes the two permutations")]
    NoDistinguishingTime,
    #[error("several orbit times distinguish the permutations: {0:?}")]
    AmbiguousDistinguishingTime(Vec<usize>),
    #[error("property 1: time {0} must lie left of the fold in the minus member and right in the plus member")]
    WrongSides(usize),
    #[error("property 3: closest return {0} is an endpoint of the dynamical interval")]
    ReturnOnDynamicalBoundary(usize),
    #[error("dynamical intervals of the two members differ")]
    DynamicalMismatch,
    #[error("property 4: dynamical preimages of the fold and of the closest return lie on the same side")]
    PreimagesSameSide,
    #[error("property 5: transit segment meets the straddle interval at time {0}")]
    TransitMeetsStraddle(usize),
    #[error("no transit: companion never enters the dynamical interval")]
    NoTransit,
}

/// One slot of the merged spatial order of a pair: shared points appear once,
/// the distinguishing time appears twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    Shared(usize),
    Minus(usize),
    Plus(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub period: usize,
    /// The orbit time placed on opposite sides of the fold.
    pub distinguishing_time: usize,
    /// `period - distinguishing_time`.
    pub return_offset: usize,
    /// `C`, from the minus copy to the plus copy of the distinguishing time.
    pub straddle: OrbitInterval,
    /// Shared orbit times strictly inside `C`.
    pub straddle_interior: Vec<usize>,
    pub dynamical: OrbitInterval,
    pub dynamical_left: OrbitInterval,
    pub dynamical_right: OrbitInterval,
    pub nondynamical_minus: Option<OrbitInterval>,
    pub nondynamical_plus: Option<OrbitInterval>,
    /// Side of the fold holding the dynamical preimage of the fold.
    pub dynamical_side: Side,
    pub transit_time: usize,
    pub transit_side: Side,
    pub merged: Vec<Slot>,
}

impl PairReport {
    /// Index of a slot in the merged order.
    pub fn merged_index(&self, slot: Slot) -> usize {
        self.merged.iter().position(|&s| s == slot).expect("slot present in merged order")
    }

    /// Slot for a shared orbit time (anything but the distinguishing time).
    pub fn shared(&self, t: usize) -> usize {
        self.merged_index(Slot::Shared(t))
    }
}

/// Distinguishing time of two same-period cyclic permutations: the unique
/// nonzero orbit time whose deletion leaves identical orders.
pub fn distinguishing_time(
    minus: &UnimodalPermutation,
    plus: &UnimodalPermutation,
) -> std::result::Result<usize, PairError> {
    if minus.period() != plus.period() {
        return Err(PairError::PeriodMismatch(minus.period(), plus.period()));
    }
    if minus == plus {
        return Err(PairError::NoDistinguishingTime);
    }
    let mut found = Vec::new();
    for t in 1..minus.period() {
        if minus.delete_time(t)? == plus.delete_time(t)? {
            found.push(t);
        }
    }
    match found.len() {
        0 => Err(PairError::NoDistinguishingTime),
        1 => Ok(found[0]),
        _ => Err(PairError::AmbiguousDistinguishingTime(found)),
    }
}

/// Checks the pair conditions (distinguishing time on opposite sides, shared
/// points order-isomorphic, closest return off `∂D`, preimages on opposite
/// sides, transit segment disjoint from `C`) and computes the transit time as
/// the first arrival of the companion inside `D`.
pub fn pair_properties(
    minus: &UnimodalPermutation,
    plus: &UnimodalPermutation,
) -> std::result::Result<PairReport, PairError> {
    let p = distinguishing_time(minus, plus)?;
    let n = minus.period();
    let (cm, cp) = (minus.cyclic()?, plus.cyclic()?);

    if minus.side_of_time(p)? != Some(Side::Left) || plus.side_of_time(p)? != Some(Side::Right) {
        return Err(PairError::WrongSides(p));
    }

    // merged order: shared points in common order, p inserted twice
    let mut merged = Vec::with_capacity(n + 1);
    let (pm, pp) = (cm.position_of(p), cp.position_of(p));
    let shared: Vec<usize> = cm.times().iter().copied().filter(|&t| t != p).collect();
    for (k, &t) in shared.iter().enumerate() {
        if k == pm {
            merged.push(Slot::Minus(p));
        }
        if k == pp {
            merged.push(Slot::Plus(p));
        }
        merged.push(Slot::Shared(t));
    }
    if pp == n - 1 {
        merged.push(Slot::Plus(p));
    }

    let (dm, em) = preimage_intervals(minus)?;
    let (dp, ep) = preimage_intervals(plus)?;
    if dm != dp {
        return Err(PairError::DynamicalMismatch);
    }
    if dm.left == p || dm.right == p {
        return Err(PairError::ReturnOnDynamicalBoundary(p));
    }

    let d = n - 1;
    let side_d = minus.side_of_time(d)?;
    let side_prev = minus.side_of_time(p - 1)?;
    let dynamical_side = match (side_d, side_prev) {
        (Some(a), Some(b)) if a != b => a,
        _ => return Err(PairError::PreimagesSameSide),
    };

    let mut report = PairReport {
        period: n,
        distinguishing_time: p,
        return_offset: n - p,
        straddle: OrbitInterval { left: p, right: p, kind: IntervalKind::Straddle },
        straddle_interior: Vec::new(),
        dynamical: dm,
        dynamical_left: OrbitInterval { left: dm.left, right: d, kind: IntervalKind::DynamicalPreimage },
        dynamical_right: OrbitInterval { left: d, right: dm.right, kind: IntervalKind::DynamicalPreimage },
        nondynamical_minus: em,
        nondynamical_plus: ep,
        dynamical_side,
        transit_time: 0,
        transit_side: Side::Left,
        merged,
    };

    let c_lo = report.merged_index(Slot::Minus(p));
    let c_hi = report.merged_index(Slot::Plus(p));
    report.straddle_interior = report.merged[c_lo + 1..c_hi]
        .iter()
        .map(|s| match s {
            Slot::Shared(t) => *t,
            _ => unreachable!("only one copy of each side"),
        })
        .collect();
    for t in p + 1..n {
        let k = report.shared(t);
        if c_lo <= k && k <= c_hi {
            return Err(PairError::TransitMeetsStraddle(t));
        }
    }

    // companion r_i sits beside p+i; r_1 on the left, later sides follow parity
    let d_lo = 4 * report.shared(dm.left);
    let d_hi = 4 * report.shared(dm.right);
    let mut transit = None;
    for i in 1..n - p {
        let parity = if i == 1 { 0 } else { rho(minus, p + 1, p + i)? % 2 };
        let key = 4 * report.shared(p + i);
        let key = if parity == 0 { key - 1 } else { key + 1 };
        if d_lo < key && key < d_hi {
            let side = if parity == 0 { Side::Left } else { Side::Right };
            transit = Some((i - 1, side));
            break;
        }
    }
    let (t, side) = transit.ok_or(PairError::NoTransit)?;
    report.transit_time = t;
    report.transit_side = side;
    Ok(report)
}

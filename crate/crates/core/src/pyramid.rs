//! Empty room configurations of finite length, pyramid partitions and the
//! black/white stone pairs that the conifold operators add and remove.
//!
//! Stones carry coordinates `(k, a, c)`. A black stone `B(k;a,c)` sits on
//! layer `2k+1` with weight `chi + a*q + (k-a)*h + c*t`; a white stone
//! `W(k;a,c)` sits on layer `2k` with weight `chi + a*q + (k-1-a)*h + c*t`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{Params, Scalar};

/// Default cap on the length of an empty room configuration.
pub const DEFAULT_LENGTH_CAP: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Stone {
    pub color: Color,
    pub k: u32,
    pub a: u32,
    pub c: u32,
}

impl Stone {
    pub const fn black(k: u32, a: u32, c: u32) -> Self {
        Stone { color: Color::Black, k, a, c }
    }

    pub const fn white(k: u32, a: u32, c: u32) -> Self {
        Stone { color: Color::White, k, a, c }
    }

    pub fn is_black(&self) -> bool {
        self.color == Color::Black
    }

    /// Layer counted from the top, starting at 1.
    pub fn layer(&self) -> u32 {
        match self.color {
            Color::Black => 2 * self.k + 1,
            Color::White => 2 * self.k,
        }
    }

    /// Whether the coordinates lie in the configuration of length `m`.
    pub fn in_erc(&self, m: u32) -> bool {
        let Stone { k, a, c, .. } = *self;
        match self.color {
            Color::Black => k < m && a <= k && c >= k && c < m,
            Color::White => k >= 1 && k < m && a < k && c >= k && c < m,
        }
    }

    /// Exponents of `(q, h, t)` in the weight, measured from `chi`.
    pub fn exponents(&self) -> (i64, i64, i64) {
        let (k, a, c) = (self.k as i64, self.a as i64, self.c as i64);
        match self.color {
            Color::Black => (a, k - a, c),
            Color::White => (a, k - 1 - a, c),
        }
    }

    pub fn weight<S: Scalar>(&self, p: &Params<S>) -> S {
        let (eq, eh, et) = self.exponents();
        p.chi.clone()
            + S::from_i64(eq) * p.q()
            + S::from_i64(eh) * p.h()
            + S::from_i64(et) * p.t()
    }

    /// The white stone of equal weight on the layer directly below a black
    /// stone, if the configuration contains it.
    pub fn partner(&self, m: u32) -> Option<Stone> {
        if !self.is_black() {
            return None;
        }
        let w = Stone::white(self.k + 1, self.a, self.c);
        w.in_erc(m).then_some(w)
    }
}

impl PartialOrd for Stone {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Stone {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.layer(), self.a, self.c).cmp(&(other.layer(), other.a, other.c))
    }
}

/// The full stone arrangement of length `m` with its covering relation.
#[derive(Clone, Debug)]
pub struct Erc {
    m: u32,
    stones: Vec<Stone>,
    above: BTreeMap<Stone, Vec<Stone>>,
    below: BTreeMap<Stone, Vec<Stone>>,
}

/// `lower` lies directly below `upper`: adjacent layers, with weight
/// difference `q` or `h` under a white stone and `0` or `t` under a black one.
fn covers(upper: &Stone, lower: &Stone) -> bool {
    if lower.layer() != upper.layer() + 1 {
        return false;
    }
    let (uq, uh, ut) = upper.exponents();
    let (lq, lh, lt) = lower.exponents();
    let d = (lq - uq, lh - uh, lt - ut);
    match upper.color {
        Color::White => d == (1, 0, 0) || d == (0, 1, 0),
        Color::Black => d == (0, 0, 0) || d == (0, 0, 1),
    }
}

pub fn build_erc(m: u32, cap: u32) -> Result<Erc, Error> {
    if m == 0 || m > cap {
        return Err(Error::CapExceeded { requested: m as usize, cap: cap as usize });
    }
    let mut stones = Vec::new();
    for k in 0..m {
        for a in 0..=k {
            for c in k..m {
                stones.push(Stone::black(k, a, c));
                let w = Stone::white(k, a, c);
                if w.in_erc(m) {
                    stones.push(w);
                }
            }
        }
    }
    stones.sort();
    let mut above: BTreeMap<Stone, Vec<Stone>> = stones.iter().map(|s| (*s, vec![])).collect();
    let mut below = above.clone();
    for u in &stones {
        for l in &stones {
            if covers(u, l) {
                above.get_mut(l).expect("stone").push(*u);
                below.get_mut(u).expect("stone").push(*l);
            }
        }
    }
    Ok(Erc { m, stones, above, below })
}

impl Erc {
    pub fn length(&self) -> u32 {
        self.m
    }

    pub fn stones(&self) -> &[Stone] {
        &self.stones
    }

    pub fn len(&self) -> usize {
        self.stones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stones.is_empty()
    }

    pub fn blacks(&self) -> impl Iterator<Item = &Stone> {
        self.stones.iter().filter(|s| s.is_black())
    }

    pub fn whites(&self) -> impl Iterator<Item = &Stone> {
        self.stones.iter().filter(|s| !s.is_black())
    }

    pub fn directly_above(&self, s: &Stone) -> &[Stone] {
        self.above.get(s).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn directly_below(&self, s: &Stone) -> &[Stone] {
        self.below.get(s).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_upward_closed(&self, set: &BTreeSet<Stone>) -> bool {
        set.iter().all(|s| s.in_erc(self.m) && self.directly_above(s).iter().all(|u| set.contains(u)))
    }

    pub fn full(&self) -> PyramidPartition {
        PyramidPartition { m: self.m, stones: self.stones.clone() }
    }

    pub fn partition(&self, stones: impl IntoIterator<Item = Stone>) -> Result<PyramidPartition, Error> {
        let set: BTreeSet<Stone> = stones.into_iter().collect();
        if !self.is_upward_closed(&set) {
            return Err(Error::InvalidLabel("stones do not form a pyramid partition".into()));
        }
        Ok(PyramidPartition { m: self.m, stones: set.into_iter().collect() })
    }

    /// Stones outside `pi` whose addition keeps it upward closed.
    pub fn addible_stones(&self, pi: &PyramidPartition) -> Vec<Stone> {
        self.stones
            .iter()
            .filter(|s| !pi.contains(s) && self.directly_above(s).iter().all(|u| pi.contains(u)))
            .copied()
            .collect()
    }

    /// Black/white pairs outside `pi` whose joint addition keeps it upward
    /// closed.
    pub fn addible_pairs(&self, pi: &PyramidPartition) -> Vec<Pair> {
        self.blacks()
            .filter_map(|b| b.partner(self.m).map(|w| Pair { black: *b, white: w }))
            .filter(|p| !pi.contains(&p.black) && !pi.contains(&p.white))
            .filter(|p| {
                let ok = |s: &Stone| {
                    self.directly_above(s).iter().all(|u| pi.contains(u) || *u == p.black || *u == p.white)
                };
                ok(&p.black) && ok(&p.white)
            })
            .collect()
    }

    /// Pairs inside `pi` whose joint removal keeps it upward closed.
    pub fn removable_pairs(&self, pi: &PyramidPartition) -> Vec<Pair> {
        self.blacks()
            .filter_map(|b| b.partner(self.m).map(|w| Pair { black: *b, white: w }))
            .filter(|p| pi.contains(&p.black) && pi.contains(&p.white))
            .filter(|p| {
                let gone = |s: &Stone| *s == p.black || *s == p.white;
                [p.black, p.white].iter().all(|s| {
                    self.directly_below(s).iter().all(|l| gone(l) || !pi.contains(l))
                })
            })
            .collect()
    }
}

/// An upward-closed subset of an empty room configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PyramidPartition {
    pub m: u32,
    stones: Vec<Stone>,
}

impl PartialOrd for PyramidPartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PyramidPartition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.m, self.stones.len(), &self.stones).cmp(&(other.m, other.stones.len(), &other.stones))
    }
}

impl PyramidPartition {
    pub fn empty(m: u32) -> Self {
        PyramidPartition { m, stones: vec![] }
    }

    pub fn stones(&self) -> &[Stone] {
        &self.stones
    }

    pub fn len(&self) -> usize {
        self.stones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stones.is_empty()
    }

    pub fn contains(&self, s: &Stone) -> bool {
        self.stones.binary_search(s).is_ok()
    }

    pub fn blacks(&self) -> impl Iterator<Item = &Stone> {
        self.stones.iter().filter(|s| s.is_black())
    }

    pub fn whites(&self) -> impl Iterator<Item = &Stone> {
        self.stones.iter().filter(|s| !s.is_black())
    }

    pub fn black_count(&self) -> usize {
        self.blacks().count()
    }

    pub fn white_count(&self) -> usize {
        self.stones.len() - self.black_count()
    }

    /// `#black - #white`.
    pub fn sector(&self) -> i64 {
        self.black_count() as i64 - self.white_count() as i64
    }

    /// Black stones whose partner white is absent from `self` or from the
    /// configuration altogether.
    pub fn black_only(&self) -> impl Iterator<Item = &Stone> {
        self.blacks().filter(|b| b.partner(self.m).is_none_or(|w| !self.contains(&w)))
    }

    pub fn black_only_count(&self) -> usize {
        self.black_only().count()
    }

    pub fn with(&self, extra: &[Stone]) -> Self {
        let set: BTreeSet<Stone> = self.stones.iter().chain(extra).copied().collect();
        PyramidPartition { m: self.m, stones: set.into_iter().collect() }
    }

    pub fn without(&self, gone: &[Stone]) -> Self {
        let stones = self.stones.iter().filter(|s| !gone.contains(s)).copied().collect();
        PyramidPartition { m: self.m, stones }
    }

    pub fn with_pair(&self, p: &Pair) -> Self {
        self.with(&[p.black, p.white])
    }

    pub fn without_pair(&self, p: &Pair) -> Self {
        self.without(&[p.black, p.white])
    }
}

/// A black stone together with the equal-weight white stone directly below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pair {
    pub black: Stone,
    pub white: Stone,
}

impl Pair {
    pub fn weight<S: Scalar>(&self, p: &Params<S>) -> S {
        self.black.weight(p)
    }
}

/// Pyramid partitions with a fixed number of black and white stones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PyramidGroup {
    pub blacks: usize,
    pub whites: usize,
    pub partitions: Vec<PyramidPartition>,
}

/// All pyramid partitions with at most `max_stones` stones, grouped by
/// `(#black, #white)` and optionally restricted to one sector.
pub fn enumerate_pyramids(
    erc: &Erc,
    max_stones: usize,
    sector: Option<i64>,
) -> Result<Vec<PyramidGroup>, Error> {
    if max_stones > erc.len() {
        return Err(Error::CapExceeded { requested: max_stones, cap: erc.len() });
    }
    let mut all = vec![PyramidPartition::empty(erc.length())];
    let mut frontier = all.clone();
    for _ in 0..max_stones {
        let next: BTreeSet<PyramidPartition> = frontier
            .iter()
            .flat_map(|p| erc.addible_stones(p).into_iter().map(move |s| p.with(&[s])))
            .collect();
        frontier = next.into_iter().collect();
        all.extend(frontier.iter().cloned());
    }
    let mut groups: BTreeMap<(usize, usize), Vec<PyramidPartition>> = BTreeMap::new();
    for p in all {
        if sector.is_some_and(|d| p.sector() != d) {
            continue;
        }
        groups.entry((p.len(), p.black_count())).or_default().push(p);
    }
    Ok(groups
        .into_iter()
        .map(|((n, b), mut partitions)| {
            partitions.sort();
            PyramidGroup { blacks: b, whites: n - b, partitions }
        })
        .collect())
}

/// The basis levels of one sector: level `n` holds the partitions with `n`
/// white and `n + sector` black stones, using at most `max_stones` stones.
pub fn sector_levels(
    erc: &Erc,
    sector: i64,
    max_stones: usize,
) -> Result<Vec<Vec<PyramidPartition>>, Error> {
    let groups = enumerate_pyramids(erc, max_stones, Some(sector))?;
    if sector < 0 || (sector as usize) > max_stones {
        return Ok(vec![]);
    }
    let top = (max_stones - sector as usize) / 2;
    let mut levels = vec![Vec::new(); top + 1];
    for g in groups {
        levels[g.whites].extend(g.partitions);
    }
    Ok(levels)
}

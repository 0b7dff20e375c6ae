//! Plane partitions (3D Young diagrams) and their addible/removable boxes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{Params, Scalar};

/// Default cap on the number of boxes accepted by the enumerator.
pub const DEFAULT_BOX_CAP: usize = 10;

/// A box with nonnegative coordinates; the corner box is `(0, 0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[u32; 3]", into = "[u32; 3]")]
pub struct Box3 {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl Box3 {
    pub const fn new(i: u32, j: u32, k: u32) -> Self {
        Box3 { i, j, k }
    }

    /// The (at most three) boxes one step toward the corner.
    pub fn predecessors(self) -> impl Iterator<Item = Box3> {
        let Box3 { i, j, k } = self;
        [
            i.checked_sub(1).map(|i| Box3::new(i, j, k)),
            j.checked_sub(1).map(|j| Box3::new(i, j, k)),
            k.checked_sub(1).map(|k| Box3::new(i, j, k)),
        ]
        .into_iter()
        .flatten()
    }

    pub fn successors(self) -> [Box3; 3] {
        let Box3 { i, j, k } = self;
        [Box3::new(i + 1, j, k), Box3::new(i, j + 1, k), Box3::new(i, j, k + 1)]
    }

    /// `chi + i*h1 + j*h2 + k*h3`.
    pub fn weight<S: Scalar>(self, p: &Params<S>) -> S {
        p.chi.clone()
            + S::from_i64(self.i as i64) * &p.h1
            + S::from_i64(self.j as i64) * &p.h2
            + S::from_i64(self.k as i64) * &p.h3
    }
}

impl From<[u32; 3]> for Box3 {
    fn from(a: [u32; 3]) -> Self {
        Box3::new(a[0], a[1], a[2])
    }
}

impl From<Box3> for [u32; 3] {
    fn from(b: Box3) -> Self {
        [b.i, b.j, b.k]
    }
}

/// A finite order ideal of boxes, stored lexicographically sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition3D {
    boxes: Vec<Box3>,
}

impl Partition3D {
    pub fn empty() -> Self {
        Partition3D::default()
    }

    /// Builds a partition from arbitrary boxes, rejecting non-ideals.
    pub fn from_boxes(boxes: impl IntoIterator<Item = Box3>) -> Result<Self, Error> {
        let set: BTreeSet<Box3> = boxes.into_iter().collect();
        if !is_order_ideal(&set) {
            return Err(Error::InvalidLabel("boxes do not form a plane partition".into()));
        }
        Ok(Partition3D { boxes: set.into_iter().collect() })
    }

    pub fn boxes(&self) -> &[Box3] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, b: Box3) -> bool {
        self.boxes.binary_search(&b).is_ok()
    }

    pub fn with(&self, b: Box3) -> Self {
        let mut boxes = self.boxes.clone();
        if let Err(pos) = boxes.binary_search(&b) {
            boxes.insert(pos, b);
        }
        Partition3D { boxes }
    }

    pub fn without(&self, b: Box3) -> Self {
        let mut boxes = self.boxes.clone();
        if let Ok(pos) = boxes.binary_search(&b) {
            boxes.remove(pos);
        }
        Partition3D { boxes }
    }

    /// Boxes outside `self` whose addition keeps an order ideal.
    pub fn addible_boxes(&self) -> Vec<Box3> {
        let mut cands: BTreeSet<Box3> = self.boxes.iter().flat_map(|b| b.successors()).collect();
        cands.insert(Box3::new(0, 0, 0));
        cands
            .into_iter()
            .filter(|b| !self.contains(*b) && b.predecessors().all(|p| self.contains(p)))
            .collect()
    }

    /// Boxes of `self` whose removal keeps an order ideal.
    pub fn removable_boxes(&self) -> Vec<Box3> {
        self.boxes
            .iter()
            .copied()
            .filter(|b| b.successors().iter().all(|s| !self.contains(*s)))
            .collect()
    }
}

pub fn is_order_ideal(set: &BTreeSet<Box3>) -> bool {
    set.iter().all(|b| b.predecessors().all(|p| set.contains(&p)))
}

/// All plane partitions with `0..=n` boxes, one sorted level per size.
pub fn enumerate_plane_partitions(n: usize, cap: usize) -> Result<Vec<Vec<Partition3D>>, Error> {
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    let mut levels = vec![vec![Partition3D::empty()]];
    for _ in 0..n {
        let prev = levels.last().expect("nonempty");
        let next: BTreeSet<Partition3D> = prev
            .iter()
            .flat_map(|p| p.addible_boxes().into_iter().map(move |b| p.with(b)))
            .collect();
        levels.push(next.into_iter().collect());
    }
    Ok(levels)
}

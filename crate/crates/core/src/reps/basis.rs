use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exact::{Params, Scalar};
use crate::partitions3d::{enumerate_plane_partitions, Box3, Partition3D, DEFAULT_BOX_CAP};
use crate::pyramid::{build_erc, sector_levels, Erc, Pair, PyramidPartition, DEFAULT_LENGTH_CAP};

/// Which fixed-point geometry a basis describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Geometry {
    C3,
    Conifold { m: u32 },
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Geometry::C3 => write!(f, "c3"),
            Geometry::Conifold { m } => write!(f, "conifold:{m}"),
        }
    }
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "c3" {
            return Ok(Geometry::C3);
        }
        let bad = || Error::Format(format!("unknown geometry {s:?}; expected c3 or conifold:<m>"));
        let m = s.strip_prefix("conifold:").ok_or_else(bad)?;
        let m: u32 = m.parse().map_err(|_| bad())?;
        if m == 0 {
            return Err(bad());
        }
        Ok(Geometry::Conifold { m })
    }
}

impl Serialize for Geometry {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Geometry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A fixed point: a plane partition or a pyramid partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Plane(Partition3D),
    Pyramid(PyramidPartition),
}

/// What the raising operators add: a box or a black/white pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Site {
    Box(Box3),
    Pair(Pair),
}

impl Site {
    pub fn weight<S: Scalar>(&self, p: &Params<S>) -> S {
        match self {
            Site::Box(b) => b.weight(p),
            Site::Pair(pair) => pair.weight(p),
        }
    }
}

/// Fixed-point labels of the truncated representation, level by level.
///
/// Level `n` holds plane partitions with `n` boxes, or pyramid partitions of
/// the chosen sector with `n` white stones.
#[derive(Clone, Debug)]
pub struct FixedPointBasis {
    geometry: Geometry,
    sector: i64,
    levels: Vec<Vec<Label>>,
    index: HashMap<Label, (usize, usize)>,
    erc: Option<Erc>,
}

impl FixedPointBasis {
    /// Plane partitions with at most `n` boxes.
    pub fn c3(n: usize) -> Result<Self, Error> {
        Self::c3_with_cap(n, DEFAULT_BOX_CAP)
    }

    pub fn c3_with_cap(n: usize, cap: usize) -> Result<Self, Error> {
        let levels = enumerate_plane_partitions(n, cap)?
            .into_iter()
            .map(|l| l.into_iter().map(Label::Plane).collect())
            .collect();
        Ok(Self::from_levels(Geometry::C3, 0, levels, None))
    }

    /// Pyramid partitions of length `m` in one sector, with at most
    /// `max_stones` stones.
    pub fn conifold(m: u32, sector: i64, max_stones: usize) -> Result<Self, Error> {
        let erc = build_erc(m, DEFAULT_LENGTH_CAP)?;
        let levels = sector_levels(&erc, sector, max_stones.min(erc.len()))?
            .into_iter()
            .map(|l| l.into_iter().map(Label::Pyramid).collect())
            .collect();
        Ok(Self::from_levels(Geometry::Conifold { m }, sector, levels, Some(erc)))
    }

    fn from_levels(geometry: Geometry, sector: i64, levels: Vec<Vec<Label>>, erc: Option<Erc>) -> Self {
        let index = levels
            .iter()
            .enumerate()
            .flat_map(|(n, l)| l.iter().enumerate().map(move |(i, lab)| (lab.clone(), (n, i))))
            .collect();
        FixedPointBasis { geometry, sector, levels, index, erc }
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn sector(&self) -> i64 {
        self.sector
    }

    pub fn levels(&self) -> &[Vec<Label>] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> &[Label] {
        self.levels.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Highest level present (the truncation `N`).
    pub fn top(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn dim(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> impl Iterator<Item = &Label> {
        self.levels.iter().flatten()
    }

    pub fn position(&self, label: &Label) -> Option<(usize, usize)> {
        self.index.get(label).copied()
    }

    pub fn erc(&self) -> Option<&Erc> {
        self.erc.as_ref()
    }

    pub fn length(&self) -> u32 {
        match self.geometry {
            Geometry::C3 => 0,
            Geometry::Conifold { m } => m,
        }
    }

    pub fn addible(&self, label: &Label) -> Vec<Site> {
        match (label, &self.erc) {
            (Label::Plane(l), _) => l.addible_boxes().into_iter().map(Site::Box).collect(),
            (Label::Pyramid(p), Some(erc)) => erc.addible_pairs(p).into_iter().map(Site::Pair).collect(),
            (Label::Pyramid(_), None) => vec![],
        }
    }

    pub fn removable(&self, label: &Label) -> Vec<Site> {
        match (label, &self.erc) {
            (Label::Plane(l), _) => l.removable_boxes().into_iter().map(Site::Box).collect(),
            (Label::Pyramid(p), Some(erc)) => erc.removable_pairs(p).into_iter().map(Site::Pair).collect(),
            (Label::Pyramid(_), None) => vec![],
        }
    }

    pub fn add(&self, label: &Label, site: &Site) -> Label {
        match (label, site) {
            (Label::Plane(l), Site::Box(b)) => Label::Plane(l.with(*b)),
            (Label::Pyramid(p), Site::Pair(pair)) => Label::Pyramid(p.with_pair(pair)),
            _ => panic!("site does not match the label kind"),
        }
    }

    pub fn remove(&self, label: &Label, site: &Site) -> Label {
        match (label, site) {
            (Label::Plane(l), Site::Box(b)) => Label::Plane(l.without(*b)),
            (Label::Pyramid(p), Site::Pair(pair)) => Label::Pyramid(p.without_pair(pair)),
            _ => panic!("site does not match the label kind"),
        }
    }

    /// Addible sites whose weights collide are a resonance of the chosen
    /// parameters; the operators would not be diagonalizable otherwise.
    pub fn check_distinct_weights<S: Scalar>(&self, label: &Label, p: &Params<S>) -> Result<(), Error> {
        for sites in [self.addible(label), self.removable(label)] {
            let mut w: Vec<S> = sites.iter().map(|s| s.weight(p)).collect();
            w.sort();
            if w.windows(2).any(|x| x[0] == x[1]) {
                return Err(Error::Resonance(format!("two sites of {label:?} share a weight")));
            }
        }
        Ok(())
    }
}

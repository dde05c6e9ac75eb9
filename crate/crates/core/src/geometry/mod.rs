//! Lattice point sets and the primitives built on them.

mod components;
mod hull;

pub use components::{connected_components, Adjacency, ComponentCensus};
pub use hull::{convex_hull, diameter, diameter_squared, BRUTE_FORCE_CUTOFF};

use std::fmt;
use std::ops::{Add, Sub};

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("operation requires a non-empty point set")]
    EmptySet,
}

/// A point of the integer lattice Z².
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize,
)]
pub struct LatticePoint {
    pub x: i64,
    pub y: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { x: 0, y: 0 };

    #[inline]
    pub const fn new(x: i64, y: i64) -> Self {
        Self { x, y }
    }

    /// Squared Euclidean distance, exact in integer arithmetic.
    #[inline]
    pub fn dist2(self, other: LatticePoint) -> u128 {
        let dx = (self.x - other.x).unsigned_abs() as u128;
        let dy = (self.y - other.y).unsigned_abs() as u128;
        dx * dx + dy * dy
    }

    /// The four lattice neighbours sharing an edge with this point.
    #[inline]
    pub fn neighbors4(self) -> [LatticePoint; 4] {
        let LatticePoint { x, y } = self;
        [
            Self::new(x + 1, y),
            Self::new(x - 1, y),
            Self::new(x, y + 1),
            Self::new(x, y - 1),
        ]
    }

    #[inline]
    pub fn neighbors8(self) -> [LatticePoint; 8] {
        let LatticePoint { x, y } = self;
        [
            Self::new(x + 1, y),
            Self::new(x - 1, y),
            Self::new(x, y + 1),
            Self::new(x, y - 1),
            Self::new(x + 1, y + 1),
            Self::new(x + 1, y - 1),
            Self::new(x - 1, y + 1),
            Self::new(x - 1, y - 1),
        ]
    }
}

impl Add for LatticePoint {
    type Output = LatticePoint;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for LatticePoint {
    type Output = LatticePoint;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl From<(i64, i64)> for LatticePoint {
    fn from((x, y): (i64, i64)) -> Self {
        Self::new(x, y)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Axis-aligned box in lattice units, or the empty box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum BoundingBox {
    #[default]
    Empty,
    Bounds {
        xmin: i64,
        xmax: i64,
        ymin: i64,
        ymax: i64,
    },
}

impl BoundingBox {
    pub fn of_point(p: LatticePoint) -> Self {
        BoundingBox::Bounds {
            xmin: p.x,
            xmax: p.x,
            ymin: p.y,
            ymax: p.y,
        }
    }

    pub fn from_points<I: IntoIterator<Item = LatticePoint>>(points: I) -> Self {
        points
            .into_iter()
            .fold(BoundingBox::Empty, |bb, p| bb.expanded(p))
    }

    #[must_use]
    pub fn expanded(self, p: LatticePoint) -> Self {
        match self {
            BoundingBox::Empty => Self::of_point(p),
            BoundingBox::Bounds {
                xmin,
                xmax,
                ymin,
                ymax,
            } => BoundingBox::Bounds {
                xmin: xmin.min(p.x),
                xmax: xmax.max(p.x),
                ymin: ymin.min(p.y),
                ymax: ymax.max(p.y),
            },
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, BoundingBox::Empty)
    }

    pub fn contains(&self, p: LatticePoint) -> bool {
        match *self {
            BoundingBox::Empty => false,
            BoundingBox::Bounds {
                xmin,
                xmax,
                ymin,
                ymax,
            } => (xmin..=xmax).contains(&p.x) && (ymin..=ymax).contains(&p.y),
        }
    }

    /// `xmax - xmin`, zero for the empty box.
    pub fn width(&self) -> i64 {
        match *self {
            BoundingBox::Empty => 0,
            BoundingBox::Bounds { xmin, xmax, .. } => xmax - xmin,
        }
    }

    pub fn height(&self) -> i64 {
        match *self {
            BoundingBox::Empty => 0,
            BoundingBox::Bounds { ymin, ymax, .. } => ymax - ymin,
        }
    }

    fn on_edge(&self, p: LatticePoint) -> bool {
        match *self {
            BoundingBox::Empty => false,
            BoundingBox::Bounds {
                xmin,
                xmax,
                ymin,
                ymax,
            } => p.x == xmin || p.x == xmax || p.y == ymin || p.y == ymax,
        }
    }
}

/// A finite set of lattice points with a tight bounding box.
#[derive(Debug, Clone, Default)]
pub struct PointSet {
    members: FxHashSet<LatticePoint>,
    bbox: BoundingBox,
}

impl PointSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(capacity: usize) -> Self {
        let mut members = FxHashSet::default();
        members.reserve(capacity);
        Self {
            members,
            bbox: BoundingBox::Empty,
        }
    }

    /// Adds `p`, returning `true` if it was not already present.
    pub fn insert(&mut self, p: LatticePoint) -> bool {
        let fresh = self.members.insert(p);
        if fresh {
            self.bbox = self.bbox.expanded(p);
        }
        fresh
    }

    /// Removes `p`, returning `true` if it was present.
    ///
    /// Removing a point on the bounding box edge rescans the set to keep the
    /// box tight.
    pub fn remove(&mut self, p: LatticePoint) -> bool {
        let present = self.members.remove(&p);
        if present && self.bbox.on_edge(p) {
            self.bbox = BoundingBox::from_points(self.members.iter().copied());
        }
        present
    }

    #[inline]
    pub fn contains(&self, p: LatticePoint) -> bool {
        self.members.contains(&p)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    #[inline]
    pub fn bbox(&self) -> BoundingBox {
        self.bbox
    }

    /// Iterates members in unspecified order.
    pub fn iter(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.members.iter().copied()
    }

    /// Members sorted by `(x, y)`; the canonical order for output and sampling.
    pub fn sorted(&self) -> Vec<LatticePoint> {
        let mut v: Vec<_> = self.iter().collect();
        v.sort_unstable();
        v
    }

    /// The set shifted by `v`.
    #[must_use]
    pub fn translated(&self, v: LatticePoint) -> PointSet {
        self.iter().map(|p| p + v).collect()
    }
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for PointSet {}

impl FromIterator<LatticePoint> for PointSet {
    fn from_iter<I: IntoIterator<Item = LatticePoint>>(iter: I) -> Self {
        let iter = iter.into_iter();
        let mut set = PointSet::with_capacity(iter.size_hint().0);
        set.extend(iter);
        set
    }
}

impl Extend<LatticePoint> for PointSet {
    fn extend<I: IntoIterator<Item = LatticePoint>>(&mut self, iter: I) {
        for p in iter {
            self.insert(p);
        }
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = LatticePoint;
    type IntoIter = std::iter::Copied<std::collections::hash_set::Iter<'a, LatticePoint>>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn insert_into_empty() {
        let mut s = PointSet::new();
        assert!(s.bbox().is_empty());
        s.insert(p(0, 0));
        assert_eq!(s.len(), 1);
        assert_eq!(
            s.bbox(),
            BoundingBox::Bounds {
                xmin: 0,
                xmax: 0,
                ymin: 0,
                ymax: 0
            }
        );
    }

    #[test]
    fn duplicate_insert_is_idempotent() {
        let mut s: PointSet = [p(0, 0)].into_iter().collect();
        assert!(!s.insert(p(0, 0)));
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn bbox_grows() {
        let mut s: PointSet = [p(0, 0)].into_iter().collect();
        s.insert(p(3, -2));
        assert_eq!(
            s.bbox(),
            BoundingBox::Bounds {
                xmin: 0,
                xmax: 3,
                ymin: -2,
                ymax: 0
            }
        );
    }

    #[test]
    fn remove_keeps_bbox_tight() {
        let mut s: PointSet = [p(0, 0), p(5, 1), p(2, 7)].into_iter().collect();
        assert!(s.remove(p(5, 1)));
        assert_eq!(
            s.bbox(),
            BoundingBox::Bounds {
                xmin: 0,
                xmax: 2,
                ymin: 0,
                ymax: 7
            }
        );
        s.remove(p(0, 0));
        s.remove(p(2, 7));
        assert!(s.bbox().is_empty());
        assert!(!s.remove(p(2, 7)));
    }
}

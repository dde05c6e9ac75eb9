use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::{LatticePoint, PointSet};

/// Lattice adjacency used to connect points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Adjacency {
    /// Edge neighbours only.
    #[default]
    Four,
    /// Edge and corner neighbours.
    Eight,
}

impl Adjacency {
    // Half of the neighbourhood suffices when every point is visited.
    fn forward_offsets(self) -> &'static [(i64, i64)] {
        match self {
            Adjacency::Four => &[(1, 0), (0, 1)],
            Adjacency::Eight => &[(1, 0), (0, 1), (1, 1), (1, -1)],
        }
    }
}

/// Sizes of the connected components of a point set.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ComponentCensus {
    /// Component sizes in descending order.
    pub component_sizes: Vec<usize>,
    pub component_count: usize,
    pub singleton_count: usize,
    pub total_points: usize,
}

impl ComponentCensus {
    pub fn from_sizes(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        ComponentCensus {
            component_count: sizes.len(),
            singleton_count: sizes.iter().filter(|&&s| s == 1).count(),
            total_points: sizes.iter().sum(),
            component_sizes: sizes,
        }
    }

    /// Number of components of each size.
    pub fn size_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for &s in &self.component_sizes {
            *hist.entry(s).or_insert(0) += 1;
        }
        hist
    }
}

struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
    }
}

/// Partitions `set` into maximal connected groups under `adjacency`.
pub fn connected_components(set: &PointSet, adjacency: Adjacency) -> ComponentCensus {
    let points = set.sorted();
    let index: FxHashMap<LatticePoint, u32> = points
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as u32))
        .collect();
    let mut dsu = DisjointSet::new(points.len());
    for (i, &p) in points.iter().enumerate() {
        for &(dx, dy) in adjacency.forward_offsets() {
            if let Some(&j) = index.get(&LatticePoint::new(p.x + dx, p.y + dy)) {
                dsu.union(i as u32, j);
            }
        }
    }
    let mut sizes = Vec::new();
    for i in 0..points.len() as u32 {
        if dsu.find(i) == i {
            sizes.push(dsu.size[i as usize] as usize);
        }
    }
    ComponentCensus::from_sizes(sizes)
}

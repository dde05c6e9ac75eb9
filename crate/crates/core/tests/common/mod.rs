//! Slow, obviously-correct reference implementations shared by the property
//! and acceptance suites. None of these call into the code they check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use lattice_fractal::geometry::{Adjacency, LatticePoint, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Pt = (i64, i64);

pub fn to_set(points: &[Pt]) -> PointSet {
    points.iter().map(|&p| LatticePoint::from(p)).collect()
}

pub fn to_pts(set: &PointSet) -> Vec<Pt> {
    let mut v: Vec<Pt> = set.iter().map(|p| (p.x, p.y)).collect();
    v.sort_unstable();
    v
}

pub fn random_points(rng: &mut ChaCha8Rng, count: usize, half_width: i64) -> Vec<Pt> {
    let mut seen = HashSet::new();
    (0..count)
        .map(|_| {
            (
                rng.gen_range(-half_width..=half_width),
                rng.gen_range(-half_width..=half_width),
            )
        })
        .filter(|p| seen.insert(*p))
        .collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Plain simple random walk, independent of the crate's generator.
pub fn oracle_walk(rng: &mut ChaCha8Rng, n: usize) -> Vec<Pt> {
    let mut p = (0i64, 0i64);
    let mut out = vec![p];
    for _ in 0..n {
        match rng.gen_range(0..4) {
            0 => p.0 += 1,
            1 => p.0 -= 1,
            2 => p.1 += 1,
            _ => p.1 -= 1,
        }
        out.push(p);
    }
    out
}

pub fn brute_diameter2(points: &[Pt]) -> u128 {
    let mut best = 0u128;
    for a in points {
        for b in points {
            let dx = (a.0 - b.0).unsigned_abs() as u128;
            let dy = (a.1 - b.1).unsigned_abs() as u128;
            best = best.max(dx * dx + dy * dy);
        }
    }
    best
}

fn cross(o: Pt, a: Pt, b: Pt) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

fn strictly_between(a: Pt, b: Pt, p: Pt) -> bool {
    let dot = (p.0 - a.0) as i128 * (b.0 - a.0) as i128 + (p.1 - a.1) as i128 * (b.1 - a.1) as i128;
    let len2 =
        (b.0 - a.0) as i128 * (b.0 - a.0) as i128 + (b.1 - a.1) as i128 * (b.1 - a.1) as i128;
    dot > 0 && dot < len2
}

/// Hull vertices by checking every ordered pair as a candidate edge: `(a, b)`
/// is a counterclockwise hull edge when every other point is strictly to its
/// left or strictly inside the segment.
pub fn brute_hull(points: &[Pt]) -> BTreeSet<Pt> {
    let mut out = BTreeSet::new();
    if points.len() <= 2 {
        out.extend(points.iter().copied());
        return out;
    }
    let all_collinear = points.iter().all(|&p| cross(points[0], points[1], p) == 0);
    if all_collinear {
        let lo = *points.iter().min().unwrap();
        let hi = *points.iter().max().unwrap();
        out.insert(lo);
        out.insert(hi);
        return out;
    }
    for &a in points {
        for &b in points {
            if a == b {
                continue;
            }
            let edge = points.iter().all(|&p| {
                p == a || p == b || {
                    let c = cross(a, b, p);
                    c > 0 || (c == 0 && strictly_between(a, b, p))
                }
            });
            if edge {
                out.insert(a);
                out.insert(b);
            }
        }
    }
    out
}

/// Component sizes (descending) by breadth-first search.
pub fn bfs_components(points: &[Pt], adjacency: Adjacency) -> Vec<usize> {
    let members: HashSet<Pt> = points.iter().copied().collect();
    let mut seen: HashSet<Pt> = HashSet::new();
    let mut sizes = Vec::new();
    let steps: Vec<Pt> = match adjacency {
        Adjacency::Four => vec![(1, 0), (-1, 0), (0, 1), (0, -1)],
        Adjacency::Eight => (-1..=1)
            .flat_map(|dx| (-1..=1).map(move |dy| (dx, dy)))
            .filter(|&d| d != (0, 0))
            .collect(),
    };
    for &start in points {
        if !seen.insert(start) {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        let mut size = 0;
        while let Some(p) = queue.pop_front() {
            size += 1;
            for d in &steps {
                let q = (p.0 + d.0, p.1 + d.1);
                if members.contains(&q) && seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    sizes
}

/// Frontier by repeated sweeps: a complement cell joins the outside once any
/// edge neighbour is outside; sweep until nothing changes.
pub fn naive_frontier(points: &[Pt]) -> BTreeSet<Pt> {
    let members: HashSet<Pt> = points.iter().copied().collect();
    let xmin = points.iter().map(|p| p.0).min().unwrap() - 1;
    let xmax = points.iter().map(|p| p.0).max().unwrap() + 1;
    let ymin = points.iter().map(|p| p.1).min().unwrap() - 1;
    let ymax = points.iter().map(|p| p.1).max().unwrap() + 1;
    let mut outside: HashSet<Pt> = HashSet::new();
    for x in xmin..=xmax {
        for y in ymin..=ymax {
            if (x == xmin || x == xmax || y == ymin || y == ymax) && !members.contains(&(x, y)) {
                outside.insert((x, y));
            }
        }
    }
    loop {
        let mut changed = false;
        for x in xmin..=xmax {
            for y in ymin..=ymax {
                let p = (x, y);
                if members.contains(&p) || outside.contains(&p) {
                    continue;
                }
                let touches = [(1, 0), (-1, 0), (0, 1), (0, -1)]
                    .iter()
                    .any(|d| outside.contains(&(x + d.0, y + d.1)));
                if touches {
                    outside.insert(p);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    points
        .iter()
        .copied()
        .filter(|p| {
            [(1, 0), (-1, 0), (0, 1), (0, -1)]
                .iter()
                .any(|d| outside.contains(&(p.0 + d.0, p.1 + d.1)))
        })
        .collect()
}

pub fn linear_ray(holes: &HashSet<Pt>, start: Pt, dir: Pt, bound: i64) -> Option<Pt> {
    (1..=bound)
        .map(|k| (start.0 + k * dir.0, start.1 + k * dir.1))
        .find(|q| holes.contains(q))
}

pub fn naive_ball_count(points: &[Pt], center: Pt, r: i64) -> u64 {
    points
        .iter()
        .filter(|p| {
            let (dx, dy) = (p.0 - center.0, p.1 - center.1);
            dx * dx + dy * dy <= r * r
        })
        .count() as u64
}

/// Earthworm on an explicit finite soil grid. A move into soil pushes every
/// particle of the contiguous column ahead one site forward; the front
/// particle lands in the first hole, or leaves the grid if there is none.
pub struct SoilGrid {
    half: i64,
    side: usize,
    soil: Vec<bool>,
    pub worm: Pt,
    pub creations: u64,
    pub fills: u64,
}

impl SoilGrid {
    pub fn new(half: i64) -> Self {
        let side = (2 * half + 1) as usize;
        let mut g = SoilGrid {
            half,
            side,
            soil: vec![true; side * side],
            worm: (0, 0),
            creations: 0,
            fills: 0,
        };
        let i = g.idx((0, 0)).unwrap();
        g.soil[i] = false;
        g
    }

    fn idx(&self, p: Pt) -> Option<usize> {
        if p.0.abs() > self.half || p.1.abs() > self.half {
            return None;
        }
        Some((p.1 + self.half) as usize * self.side + (p.0 + self.half) as usize)
    }

    pub fn step(&mut self, dir: Pt) {
        let y = (self.worm.0 + dir.0, self.worm.1 + dir.1);
        let iy = self.idx(y).expect("worm stays inside the grid");
        if self.soil[iy] {
            // Collect the column of soil starting at y.
            let mut column = vec![y];
            let mut front = y;
            let landing = loop {
                let next = (front.0 + dir.0, front.1 + dir.1);
                match self.idx(next) {
                    None => break None,
                    Some(i) if !self.soil[i] => break Some(next),
                    Some(_) => {
                        column.push(next);
                        front = next;
                    }
                }
            };
            // Shift front to back.
            if let Some(h) = landing {
                let ih = self.idx(h).unwrap();
                self.soil[ih] = true;
                self.fills += 1;
            } else {
                self.creations += 1;
            }
            for w in column.windows(2).rev() {
                let (from, to) = (self.idx(w[0]).unwrap(), self.idx(w[1]).unwrap());
                self.soil[to] = self.soil[from];
            }
            self.soil[iy] = false;
        }
        self.worm = y;
    }

    pub fn holes(&self) -> BTreeSet<Pt> {
        let mut out = BTreeSet::new();
        for y in -self.half..=self.half {
            for x in -self.half..=self.half {
                if !self.soil[self.idx((x, y)).unwrap()] {
                    out.insert((x, y));
                }
            }
        }
        out
    }
}

/// Least squares of `ln y` on `ln x`, written out longhand.
pub fn reference_loglog_slope(samples: &[(f64, f64)]) -> f64 {
    let n = samples.len() as f64;
    let lx: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ly: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let sx: f64 = lx.iter().sum();
    let sy: f64 = ly.iter().sum();
    let sxx: f64 = lx.iter().map(|v| v * v).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

/// Lattice points of the closed disc of radius `r`, counted row by row.
pub fn disc_count(r: i64) -> u64 {
    (-r..=r)
        .map(|dx| {
            let mut h = 0i64;
            while (h + 1) * (h + 1) + dx * dx <= r * r {
                h += 1;
            }
            (2 * h + 1) as u64
        })
        .sum()
}

/// Depth-`depth` Sierpinski carpet on the lattice `[0, 3^depth)²`.
pub fn sierpinski_carpet(depth: u32) -> Vec<Pt> {
    let side = 3i64.pow(depth);
    let mut out = Vec::new();
    for x in 0..side {
        for y in 0..side {
            let (mut a, mut b) = (x, y);
            let mut keep = true;
            while a > 0 || b > 0 {
                if a % 3 == 1 && b % 3 == 1 {
                    keep = false;
                    break;
                }
                a /= 3;
                b /= 3;
            }
            if keep {
                out.push((x, y));
            }
        }
    }
    out
}

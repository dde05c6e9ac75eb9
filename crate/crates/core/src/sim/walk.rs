use serde::{Deserialize, Serialize};

use super::RandomSource;
use crate::geometry::{LatticePoint, PointSet};
use crate::Real;

/// Increment distribution of the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum StepLaw {
    /// Uniform over the four unit steps.
    #[default]
    FourNeighbor,
    /// Independent ±1 in each coordinate, i.e. uniform over the diagonals.
    Diagonal,
}

/// A simulated walk: the full path and the set of distinct visited sites.
#[derive(Debug, Clone)]
pub struct WalkTrace {
    pub path: Vec<LatticePoint>,
    pub visited: PointSet,
    pub n: usize,
}

impl WalkTrace {
    pub fn endpoint(&self) -> LatticePoint {
        *self.path.last().expect("trace always holds the origin")
    }
}

pub fn simulate_walk(n: usize, seed: u64) -> WalkTrace {
    simulate_walk_with(n, seed, StepLaw::FourNeighbor)
}

pub fn simulate_walk_with(n: usize, seed: u64, law: StepLaw) -> WalkTrace {
    let mut rng = RandomSource::new(seed);
    let mut path = Vec::with_capacity(n + 1);
    let mut visited = PointSet::with_capacity(n / 4 + 1);
    let mut pos = LatticePoint::ORIGIN;
    path.push(pos);
    visited.insert(pos);
    for _ in 0..n {
        let step = match law {
            StepLaw::FourNeighbor => rng.direction().offset(),
            StepLaw::Diagonal => {
                let bits = rng.next_u64() >> 62;
                LatticePoint::new(
                    if bits & 1 == 0 { 1 } else { -1 },
                    if bits & 2 == 0 { 1 } else { -1 },
                )
            }
        };
        pos = pos + step;
        path.push(pos);
        visited.insert(pos);
    }
    WalkTrace { path, visited, n }
}

/// Path scaled by `1/sqrt(n)`, for plotting against Brownian motion.
///
/// A zero-step trace is returned unscaled.
pub fn rescale_walk<F: Real>(trace: &WalkTrace) -> Vec<(F, F)> {
    let scale = if trace.n == 0 {
        F::one()
    } else {
        F::one() / F::of(trace.n as f64).sqrt()
    };
    trace
        .path
        .iter()
        .map(|p| (F::of(p.x as f64) * scale, F::of(p.y as f64) * scale))
        .collect()
}

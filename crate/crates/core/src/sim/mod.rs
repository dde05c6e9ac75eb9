//! Seeded simulation of the lattice random walk and the earthworm model.

mod earthworm;
mod rng;
mod walk;

pub use earthworm::{
    simulate_earthworm, simulate_earthworm_with, FillRule, HoleSet, StepOutcome, WormState,
};
pub use rng::{mix64, RandomSource};
pub use walk::{rescale_walk, simulate_walk, simulate_walk_with, StepLaw, WalkTrace};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::LatticePoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("{0} is not a unit lattice step")]
    InvalidDirection(LatticePoint),
}

/// One of the four unit lattice steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    East = 0,
    West = 1,
    North = 2,
    South = 3,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::East,
        Direction::West,
        Direction::North,
        Direction::South,
    ];

    #[inline]
    pub const fn offset(self) -> LatticePoint {
        match self {
            Direction::East => LatticePoint::new(1, 0),
            Direction::West => LatticePoint::new(-1, 0),
            Direction::North => LatticePoint::new(0, 1),
            Direction::South => LatticePoint::new(0, -1),
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::East => Direction::West,
            Direction::West => Direction::East,
            Direction::North => Direction::South,
            Direction::South => Direction::North,
        }
    }
}

impl TryFrom<LatticePoint> for Direction {
    type Error = SimError;

    fn try_from(v: LatticePoint) -> Result<Self, SimError> {
        Direction::ALL
            .into_iter()
            .find(|d| d.offset() == v)
            .ok_or(SimError::InvalidDirection(v))
    }
}

//! Lattice random walks, the earthworm model, Brownian frontiers, and
//! box-counting style dimension estimates of the resulting point sets.
//!
//! Lattice geometry is exact `i64` arithmetic. Real-valued results (fits,
//! profiles, rescaled paths) are generic over [`Real`], with `f64` and `f32`
//! aliases below.

pub mod estimate;
pub mod experiment;
pub mod frontier;
pub mod geometry;
pub mod pointfile;
mod scalar;
pub mod sim;

pub use scalar::Real;

pub use estimate::{EstimateError, Method};
pub use experiment::{ExperimentConfig, ExperimentError, Model, Schedule, SimulationRecord};
pub use frontier::{extract_frontier, FrontierResult};
pub use geometry::{
    connected_components, convex_hull, diameter, Adjacency, BoundingBox, ComponentCensus,
    GeometryError, LatticePoint, PointSet,
};
pub use sim::{simulate_earthworm, simulate_walk, Direction, HoleSet, WalkTrace, WormState};

pub type LogLogFit = estimate::LogLogFit<f64>;
pub type LogLogFit32 = estimate::LogLogFit<f32>;
pub type DimensionEstimate = estimate::DimensionEstimate<f64>;
pub type DimensionEstimate32 = estimate::DimensionEstimate<f32>;
pub type AveragingProfile = estimate::AveragingProfile<f64>;
pub type AveragingProfile32 = estimate::AveragingProfile<f32>;
pub type CountingSample = estimate::CountingSample<f64>;
pub type CountingFit = estimate::CountingFit<f64>;

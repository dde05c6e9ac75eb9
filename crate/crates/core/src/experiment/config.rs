use std::cmp::Ordering;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::ExperimentError;
use crate::estimate::{Aggregation, CountingMode, DEFAULT_MAX_CENTERS, DEFAULT_R_MIN};
use crate::frontier::FrontierConnectivity;
use crate::geometry::Adjacency;
use crate::sim::{FillRule, StepLaw};

/// Largest step count a schedule may request.
pub const MAX_STEPS: u64 = 1 << 40;
/// Replicate indices are packed into 24 bits of the seed key.
pub const MAX_REPLICATES: u64 = 1 << 24;

/// Which point set a batch measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Model {
    /// Visited sites of a random walk.
    Walk,
    /// Frontier of the visited sites.
    WalkFrontier,
    /// Hole set of the earthworm.
    Earthworm,
}

impl Model {
    pub fn as_str(self) -> &'static str {
        match self {
            Model::Walk => "walk",
            Model::WalkFrontier => "walk-frontier",
            Model::Earthworm => "earthworm",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Model {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "walk" => Ok(Model::Walk),
            "walk-frontier" | "frontier" => Ok(Model::WalkFrontier),
            "earthworm" => Ok(Model::Earthworm),
            other => Err(ExperimentError::Config(format!("unknown model {other:?}"))),
        }
    }
}

/// Geometric step-count schedule: `round(start · factor^k)` for `k < count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub start: u64,
    pub factor: f64,
    pub count: usize,
}

impl Schedule {
    pub fn geometric(start: u64, factor: f64, count: usize) -> Self {
        Self {
            start,
            factor,
            count,
        }
    }

    /// Eleven doublings from 2^10 to 2^20.
    pub fn default_desk() -> Self {
        Self::geometric(1 << 10, 2.0, 11)
    }

    pub fn steps(&self) -> Result<Vec<u64>, ExperimentError> {
        if self.count == 0 {
            return Err(ExperimentError::Config("schedule is empty".into()));
        }
        if self.factor.partial_cmp(&1.0) != Some(Ordering::Greater) && self.count > 1 {
            return Err(ExperimentError::Config(format!(
                "schedule factor must exceed 1, got {}",
                self.factor
            )));
        }
        let mut out: Vec<u64> = Vec::with_capacity(self.count);
        for k in 0..self.count {
            let x = (self.start as f64 * self.factor.powi(k as i32)).round();
            if x.is_nan() || x > MAX_STEPS as f64 {
                return Err(ExperimentError::Config(format!(
                    "schedule point {x} exceeds the 2^40 step limit"
                )));
            }
            let n = x as u64;
            if out.last().is_some_and(|&prev| prev >= n) {
                return Err(ExperimentError::Config(format!(
                    "schedule is not strictly increasing at {n}"
                )));
            }
            out.push(n);
        }
        Ok(out)
    }
}

impl FromStr for Schedule {
    type Err = ExperimentError;

    /// Parses `g:START:FACTOR:COUNT`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExperimentError::Config(format!("expected g:START:FACTOR:COUNT, got {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let [kind, start, factor, count] = parts.as_slice() else {
            return Err(bad());
        };
        if *kind != "g" {
            return Err(bad());
        }
        let schedule = Schedule {
            start: start.parse().map_err(|_| bad())?,
            factor: factor.parse().map_err(|_| bad())?,
            count: count.parse().map_err(|_| bad())?,
        };
        schedule.steps()?;
        Ok(schedule)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EstimatorKind {
    #[default]
    Counting,
    Averaging,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorParams {
    pub r_min: u64,
    /// `None` means a tenth of the diameter.
    pub r_max: Option<u64>,
    pub max_centers: usize,
    pub aggregation: Aggregation,
    pub counting_mode: CountingMode,
}

impl Default for EstimatorParams {
    fn default() -> Self {
        Self {
            r_min: DEFAULT_R_MIN,
            r_max: None,
            max_centers: DEFAULT_MAX_CENTERS,
            aggregation: Aggregation::default(),
            counting_mode: CountingMode::default(),
        }
    }
}

/// Model variants; the defaults are the primary conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ModelOptions {
    pub step_law: StepLaw,
    pub fill_rule: FillRule,
    pub frontier: FrontierConnectivity,
    pub census_adjacency: Adjacency,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: Model,
    pub schedule: Schedule,
    pub replicates: u64,
    pub base_seed: u64,
    pub estimator: EstimatorKind,
    pub params: EstimatorParams,
    pub options: ModelOptions,
    /// Where `records.csv` lives; `None` keeps everything in memory.
    pub output_dir: Option<PathBuf>,
    /// Worker threads; `None` uses the available parallelism.
    pub workers: Option<usize>,
    /// Store wall-clock timings. Off by default so record files are
    /// byte-reproducible.
    pub record_timing: bool,
}

impl ExperimentConfig {
    pub fn new(model: Model, schedule: Schedule, replicates: u64, base_seed: u64) -> Self {
        Self {
            model,
            schedule,
            replicates,
            base_seed,
            estimator: EstimatorKind::default(),
            params: EstimatorParams::default(),
            options: ModelOptions::default(),
            output_dir: None,
            workers: None,
            record_timing: false,
        }
    }

    pub fn validate(&self) -> Result<Vec<u64>, ExperimentError> {
        if self.replicates == 0 || self.replicates > MAX_REPLICATES {
            return Err(ExperimentError::Config(format!(
                "replicates must be in 1..=2^24, got {}",
                self.replicates
            )));
        }
        if self.workers == Some(0) {
            return Err(ExperimentError::Config(
                "worker count must be positive".into(),
            ));
        }
        self.schedule.steps()
    }
}

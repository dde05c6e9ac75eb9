//! Dimension estimators: counting, averaging and the shared log-log fit.

mod averaging;
mod ball;
mod counting;
mod fit;

pub use averaging::{
    averaging_dimension, averaging_profile, profile_estimate, radius_grid, sample_centers,
    AveragingProfile, DEFAULT_MAX_CENTERS, DEFAULT_RADIUS_RATIO, DEFAULT_R_MIN,
};
pub use ball::{ball_count, BucketGrid};
pub use counting::{
    counting_dimension, counting_dimension_with, Aggregation, CountingFit, CountingMode,
    CountingSample,
};
pub use fit::{fit_loglog, LogLogFit};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::GeometryError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EstimateError {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("domain error: {0}")]
    Domain(String),
}

impl From<GeometryError> for EstimateError {
    fn from(e: GeometryError) -> Self {
        EstimateError::Domain(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Counting,
    Averaging,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimate<F> {
    pub method: Method,
    pub value: F,
    /// Size growth exponent; counting method only.
    pub h: Option<F>,
    /// Diameter growth exponent; counting method only.
    pub d: Option<F>,
    /// Smallest r² among the fits behind the estimate.
    pub fit_quality: F,
}

//! Seeded batches over step schedules, record persistence, and the derived
//! census and plot data.

mod batch;
mod census;
mod config;
mod plot;
mod records;

pub use batch::{build_set, replicate_seed, run_batch, simulate_record, RECORDS_FILE};
pub use census::{census_report, modal_size, pooled_size_histogram, CensusRow};
pub use config::{
    EstimatorKind, EstimatorParams, ExperimentConfig, Model, ModelOptions, Schedule,
    MAX_REPLICATES, MAX_STEPS,
};
pub use plot::{emit_plot_data, FitReport, PlotSource};
pub use records::{
    load_records, read_records, save_records, write_records, SimulationRecord, RECORDS_HEADER,
};

use std::io;

use thiserror::Error;

use crate::estimate::{counting_dimension_with, CountingFit, EstimateError};
use crate::pointfile::PointFileError;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Estimate(#[from] EstimateError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("records line {line}: {message}")]
    Records { line: usize, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    PointFile(#[from] PointFileError),
}

/// Counting-method fit over a batch's records, using the config's settings.
pub fn counting_fit(
    records: &[SimulationRecord],
    params: &EstimatorParams,
) -> Result<CountingFit<f64>, ExperimentError> {
    let samples: Vec<_> = records
        .iter()
        .map(SimulationRecord::counting_sample)
        .collect();
    Ok(counting_dimension_with(
        &samples,
        params.aggregation,
        params.counting_mode,
    )?)
}

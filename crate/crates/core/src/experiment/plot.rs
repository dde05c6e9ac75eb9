use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{ExperimentError, SimulationRecord};
use crate::estimate::{AveragingProfile, CountingFit, LogLogFit, Method};

/// Serialized form of a dimension fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub method: Method,
    pub value: f64,
    /// Averaging only: the `ln Q_r` on `ln r` slope (equal to `value`).
    pub slope: Option<f64>,
    /// Averaging only: intercept of that fit, natural-log units.
    pub intercept: Option<f64>,
    pub r_squared: f64,
    pub n_points: usize,
    pub h: Option<f64>,
    pub d: Option<f64>,
    /// Counting only: `ln diam` on `ln n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter_fit: Option<LogLogFit<f64>>,
    /// Counting only: `ln |S|` on `ln n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_fit: Option<LogLogFit<f64>>,
}

impl FitReport {
    pub fn from_counting(fit: &CountingFit<f64>) -> Self {
        Self {
            method: Method::Counting,
            value: fit.estimate.value,
            slope: None,
            intercept: None,
            r_squared: fit.estimate.fit_quality,
            n_points: fit.size_fit.n_points,
            h: fit.estimate.h,
            d: fit.estimate.d,
            diameter_fit: Some(fit.diameter_fit),
            size_fit: Some(fit.size_fit),
        }
    }

    pub fn from_averaging(fit: &LogLogFit<f64>) -> Self {
        Self {
            method: Method::Averaging,
            value: fit.slope,
            slope: Some(fit.slope),
            intercept: Some(fit.intercept),
            r_squared: fit.r_squared,
            n_points: fit.n_points,
            h: None,
            d: None,
            diameter_fit: None,
            size_fit: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fit reports always serialize")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ExperimentError> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(|e| ExperimentError::Parse(e.to_string()))
    }
}

/// Raw data behind a fit.
#[derive(Debug, Clone, Copy)]
pub enum PlotSource<'a> {
    Records(&'a [SimulationRecord]),
    Profile(&'a AveragingProfile<f64>),
}

fn scatter_csv(header: &str, points: &[(f64, f64)]) -> String {
    let mut out = format!("{header}\n");
    for &(x, y) in points {
        out.push_str(&format!("{},{}\n", x.log10(), y.log10()));
    }
    out
}

fn line_csv(header: &str, fit: &LogLogFit<f64>, points: &[(f64, f64)]) -> String {
    let (lo, hi) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &(x, _)| {
            (lo.min(x), hi.max(x))
        });
    let mut out = format!("{header}\n");
    for x in [lo, hi] {
        out.push_str(&format!("{},{}\n", x.log10(), fit.predict(x).log10()));
    }
    out
}

/// Writes log10 scatter data, fitted-line endpoints and `fit.json` to `dir`.
/// Returns the paths written.
pub fn emit_plot_data(
    dir: impl AsRef<Path>,
    source: PlotSource<'_>,
    report: &FitReport,
) -> Result<Vec<PathBuf>, ExperimentError> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir)?;
    let mut files: Vec<(String, String)> = Vec::new();
    match source {
        PlotSource::Records(records) => {
            if records.is_empty() {
                return Err(ExperimentError::Domain("no records to plot".into()));
            }
            let (Some(diam_fit), Some(size_fit)) = (&report.diameter_fit, &report.size_fit) else {
                return Err(ExperimentError::Domain(
                    "records need a counting fit with diameter and size fits".into(),
                ));
            };
            let diam: Vec<_> = records.iter().map(|r| (r.n as f64, r.diameter)).collect();
            let size: Vec<_> = records
                .iter()
                .map(|r| (r.n as f64, r.set_size as f64))
                .collect();
            files.push((
                "scatter_diameter.csv".into(),
                scatter_csv("log10_n,log10_diameter", &diam),
            ));
            files.push((
                "line_diameter.csv".into(),
                line_csv("log10_n,log10_diameter", diam_fit, &diam),
            ));
            files.push((
                "scatter_size.csv".into(),
                scatter_csv("log10_n,log10_size", &size),
            ));
            files.push((
                "line_size.csv".into(),
                line_csv("log10_n,log10_size", size_fit, &size),
            ));
        }
        PlotSource::Profile(profile) => {
            if profile.radii.is_empty() {
                return Err(ExperimentError::Domain("empty averaging profile".into()));
            }
            let (Some(slope), Some(intercept)) = (report.slope, report.intercept) else {
                return Err(ExperimentError::Domain(
                    "profiles need an averaging fit with slope and intercept".into(),
                ));
            };
            let fit = LogLogFit {
                slope,
                intercept,
                r_squared: report.r_squared,
                n_points: report.n_points,
            };
            let pts = profile.samples();
            files.push(("scatter.csv".into(), scatter_csv("log10_r,log10_q_r", &pts)));
            files.push(("line.csv".into(), line_csv("log10_r,log10_q_r", &fit, &pts)));
        }
    }
    files.push(("fit.json".into(), report.to_json()));
    let mut written = Vec::with_capacity(files.len());
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body)?;
        written.push(path);
    }
    Ok(written)
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{fit_loglog, DimensionEstimate, EstimateError, LogLogFit, Method};
use crate::Real;

/// One `(n, |S|, diam S)` observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingSample<F> {
    pub n: u64,
    pub size: F,
    pub diameter: F,
}

/// How replicate observations at the same `n` enter the fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Aggregation {
    /// Average size and diameter over replicates, one fit point per `n`.
    #[default]
    MeanPerN,
    /// Every record is its own fit point.
    PerRecord,
}

/// Which regression produces the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CountingMode {
    /// Fit size and diameter against `n` separately and divide exponents.
    #[default]
    ExponentRatio,
    /// Fit `ln size` against `ln diam` directly.
    SizeVsDiameter,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingFit<F> {
    pub estimate: DimensionEstimate<F>,
    pub diameter_fit: LogLogFit<F>,
    pub size_fit: LogLogFit<F>,
    /// Present only in [`CountingMode::SizeVsDiameter`].
    pub direct_fit: Option<LogLogFit<F>>,
}

pub fn counting_dimension<F: Real>(
    records: &[CountingSample<F>],
) -> Result<CountingFit<F>, EstimateError> {
    counting_dimension_with(records, Aggregation::default(), CountingMode::default())
}

pub fn counting_dimension_with<F: Real>(
    records: &[CountingSample<F>],
    aggregation: Aggregation,
    mode: CountingMode,
) -> Result<CountingFit<F>, EstimateError> {
    if let Some(r) = records
        .iter()
        .find(|r| r.n == 0 || !is_positive(r.size) || !is_positive(r.diameter))
    {
        return Err(EstimateError::Domain(format!(
            "counting needs positive n, size and diameter, got n={} size={} diam={}",
            r.n, r.size, r.diameter
        )));
    }
    let points = match aggregation {
        Aggregation::PerRecord => records.to_vec(),
        Aggregation::MeanPerN => mean_per_n(records),
    };
    let distinct_n = points
        .iter()
        .map(|p| p.n)
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    if distinct_n < 2 {
        return Err(EstimateError::Degenerate(
            "counting needs records at 2 or more distinct n".into(),
        ));
    }
    let n_of = |p: &CountingSample<F>| F::of(p.n as f64);
    let diameter_fit = fit_loglog(
        &points
            .iter()
            .map(|p| (n_of(p), p.diameter))
            .collect::<Vec<_>>(),
    )?;
    let size_fit = fit_loglog(&points.iter().map(|p| (n_of(p), p.size)).collect::<Vec<_>>())?;
    let d = diameter_fit.slope;
    let h = size_fit.slope;
    if !is_positive(d) {
        return Err(EstimateError::Degenerate(format!(
            "diameter exponent must be positive, got {d}"
        )));
    }
    let (value, fit_quality, direct_fit) = match mode {
        CountingMode::ExponentRatio => {
            (h / d, diameter_fit.r_squared.min(size_fit.r_squared), None)
        }
        CountingMode::SizeVsDiameter => {
            let direct = fit_loglog(
                &points
                    .iter()
                    .map(|p| (p.diameter, p.size))
                    .collect::<Vec<_>>(),
            )?;
            (direct.slope, direct.r_squared, Some(direct))
        }
    };
    Ok(CountingFit {
        estimate: DimensionEstimate {
            method: Method::Counting,
            value,
            h: Some(h),
            d: Some(d),
            fit_quality,
        },
        diameter_fit,
        size_fit,
        direct_fit,
    })
}

fn mean_per_n<F: Real>(records: &[CountingSample<F>]) -> Vec<CountingSample<F>> {
    let mut groups: BTreeMap<u64, (F, F, usize)> = BTreeMap::new();
    for r in records {
        let e = groups.entry(r.n).or_insert((F::zero(), F::zero(), 0));
        e.0 = e.0 + r.size;
        e.1 = e.1 + r.diameter;
        e.2 += 1;
    }
    groups
        .into_iter()
        .map(|(n, (size, diam, k))| {
            let k = F::of(k as f64);
            CountingSample {
                n,
                size: size / k,
                diameter: diam / k,
            }
        })
        .collect()
}

// False for NaN as well as for non-positive values.
fn is_positive<F: Real>(v: F) -> bool {
    v > F::zero()
}

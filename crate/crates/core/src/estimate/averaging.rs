use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fit_loglog, BucketGrid, DimensionEstimate, EstimateError, LogLogFit, Method};
use crate::geometry::{diameter, LatticePoint, PointSet};
use crate::sim::RandomSource;
use crate::Real;

pub const DEFAULT_RADIUS_RATIO: f64 = 1.25;
pub const DEFAULT_MAX_CENTERS: usize = 5000;
pub const DEFAULT_R_MIN: u64 = 4;

/// Mean ball counts `Q_r` over a fixed sample of centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AveragingProfile<F> {
    pub radii: Vec<u64>,
    pub q_values: Vec<F>,
    pub centers_sampled: usize,
}

impl<F: Real> AveragingProfile<F> {
    pub fn samples(&self) -> Vec<(F, F)> {
        self.radii
            .iter()
            .zip(&self.q_values)
            .map(|(&r, &q)| (F::of(r as f64), q))
            .collect()
    }

    pub fn fit(&self) -> Result<LogLogFit<F>, EstimateError> {
        fit_loglog(&self.samples())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,q_r\n");
        for (r, q) in self.radii.iter().zip(&self.q_values) {
            out.push_str(&format!("{r},{q}\n"));
        }
        out
    }

    /// Parses the output of [`to_csv`](Self::to_csv). The CSV does not carry
    /// the center count, so `centers_sampled` is 0.
    pub fn from_csv(text: &str) -> Result<Self, EstimateError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        if lines.next().map(str::trim) != Some("r,q_r") {
            return Err(EstimateError::Domain(
                "profile CSV must start with r,q_r".into(),
            ));
        }
        let mut radii = Vec::new();
        let mut q_values = Vec::new();
        for line in lines {
            let bad = || EstimateError::Domain(format!("bad profile line {line:?}"));
            let (r, q) = line.trim().split_once(',').ok_or_else(bad)?;
            radii.push(r.trim().parse().map_err(|_| bad())?);
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            q_values.push(F::of(q));
        }
        Ok(Self {
            radii,
            q_values,
            centers_sampled: 0,
        })
    }
}

/// Integer radii on a geometric grid from `r_min` to `r_max` (both included).
pub fn radius_grid(r_min: u64, r_max: u64, ratio: f64) -> Vec<u64> {
    assert!(ratio > 1.0, "grid ratio must exceed 1");
    let mut radii = Vec::new();
    let mut k = 0;
    loop {
        let x = r_min as f64 * ratio.powi(k);
        if x > r_max as f64 * (1.0 + 1e-9) {
            break;
        }
        let r = x.round() as u64;
        if radii.last() != Some(&r) {
            radii.push(r);
        }
        k += 1;
    }
    if radii.last() != Some(&r_max) {
        radii.push(r_max);
    }
    radii
}

/// Up to `max_centers` members, drawn without replacement from the sorted
/// member list with a seeded stream.
pub fn sample_centers(set: &PointSet, max_centers: usize, seed: u64) -> Vec<LatticePoint> {
    let members = set.sorted();
    if max_centers >= members.len() {
        return members;
    }
    RandomSource::new(seed)
        .sample_indices(members.len(), max_centers)
        .into_iter()
        .map(|i| members[i])
        .collect()
}

/// `Q_r` for each radius, averaged over the given centers.
///
/// Per-center counts are integers, so the reduction is exact and independent
/// of how the work is split across threads.
pub fn averaging_profile<F: Real>(
    set: &PointSet,
    radii: &[u64],
    centers: &[LatticePoint],
) -> Result<AveragingProfile<F>, EstimateError> {
    if centers.is_empty() {
        return Err(EstimateError::Degenerate(
            "no centers to average over".into(),
        ));
    }
    if radii.is_empty() || radii.windows(2).any(|w| w[0] >= w[1]) || radii[0] == 0 {
        return Err(EstimateError::Domain(
            "radii must be positive and strictly increasing".into(),
        ));
    }
    if let Some(c) = centers.iter().find(|&&c| !set.contains(c)) {
        return Err(EstimateError::Domain(format!(
            "center {c} is not a member of the set"
        )));
    }
    let grid = BucketGrid::new(set, *radii.last().unwrap());
    let totals = centers
        .par_iter()
        .map(|&c| grid.counts_within(c, radii))
        .reduce(
            || vec![0u64; radii.len()],
            |mut acc, v| {
                acc.iter_mut().zip(v).for_each(|(a, b)| *a += b);
                acc
            },
        );
    let denom = F::of(centers.len() as f64);
    Ok(AveragingProfile {
        radii: radii.to_vec(),
        q_values: totals.iter().map(|&t| F::of(t as f64) / denom).collect(),
        centers_sampled: centers.len(),
    })
}

/// Averaging-method dimension: slope of `ln Q_r` against `ln r`.
///
/// `r_max = None` uses a tenth of the set's diameter.
pub fn averaging_dimension<F: Real>(
    set: &PointSet,
    r_min: u64,
    r_max: Option<u64>,
    max_centers: usize,
    seed: u64,
) -> Result<(AveragingProfile<F>, DimensionEstimate<F>), EstimateError> {
    if set.is_empty() {
        return Err(EstimateError::Domain(
            "averaging needs a non-empty set".into(),
        ));
    }
    let r_max = match r_max {
        Some(r) => r,
        None => (diameter::<f64>(set)? / 10.0).floor() as u64,
    };
    if r_min < 1 || r_min >= r_max {
        return Err(EstimateError::Domain(format!(
            "radius range needs 1 <= r_min < r_max, got [{r_min}, {r_max}]"
        )));
    }
    if max_centers == 0 {
        return Err(EstimateError::Domain("max_centers must be positive".into()));
    }
    let radii = radius_grid(r_min, r_max, DEFAULT_RADIUS_RATIO);
    let centers = sample_centers(set, max_centers, seed);
    let profile = averaging_profile(set, &radii, &centers)?;
    let estimate = profile_estimate(&profile)?;
    Ok((profile, estimate))
}

pub fn profile_estimate<F: Real>(
    profile: &AveragingProfile<F>,
) -> Result<DimensionEstimate<F>, EstimateError> {
    let fit = profile.fit()?;
    Ok(DimensionEstimate {
        method: Method::Averaging,
        value: fit.slope,
        h: None,
        d: None,
        fit_quality: fit.r_squared,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_grid() {
        assert_eq!(
            radius_grid(4, 100, 1.25),
            vec![4, 5, 6, 8, 10, 12, 15, 19, 24, 30, 37, 47, 58, 73, 91, 100]
        );
        assert_eq!(radius_grid(4, 5, 1.25), vec![4, 5]);
        assert_eq!(radius_grid(1, 3, 1.25), vec![1, 2, 3]);
    }

    #[test]
    fn single_point_profile_is_flat() {
        let s: PointSet = [LatticePoint::ORIGIN].into_iter().collect();
        let p: AveragingProfile<f64> =
            averaging_profile(&s, &[1, 2, 4], &[LatticePoint::ORIGIN]).unwrap();
        assert_eq!(p.q_values, vec![1.0, 1.0, 1.0]);
        assert_eq!(p.to_csv(), "r,q_r\n1,1\n2,1\n4,1\n");
    }

    #[test]
    fn rejects_bad_ranges() {
        let s: PointSet = (0..100).map(|x| LatticePoint::new(x, 0)).collect();
        assert!(averaging_dimension::<f64>(&s, 5, Some(5), 10, 0).is_err());
        assert!(averaging_dimension::<f64>(&s, 0, Some(5), 10, 0).is_err());
        assert!(averaging_dimension::<f64>(&PointSet::new(), 1, Some(5), 10, 0).is_err());
        assert!(averaging_profile::<f64>(&s, &[3, 2], &[LatticePoint::ORIGIN]).is_err());
        assert!(averaging_profile::<f64>(&s, &[1, 2], &[LatticePoint::new(0, 1)]).is_err());
    }

    #[test]
    fn center_sample_is_seeded() {
        let s: PointSet = (0..1000).map(|x| LatticePoint::new(x, x % 7)).collect();
        assert_eq!(sample_centers(&s, 50, 9), sample_centers(&s, 50, 9));
        assert_ne!(sample_centers(&s, 50, 9), sample_centers(&s, 50, 10));
        assert_eq!(sample_centers(&s, 5000, 9).len(), 1000);
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ExperimentError, SimulationRecord};
use crate::geometry::ComponentCensus;

/// Component statistics of earthworm hole sets at one step count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRow {
    pub n: u64,
    pub records: usize,
    pub mean_component_count: f64,
    /// Singletons over all components, pooled across replicates.
    pub singleton_component_fraction: f64,
    /// Singleton holes over all holes, pooled across replicates.
    pub singleton_area_fraction: f64,
}

pub fn census_report(records: &[SimulationRecord]) -> Result<Vec<CensusRow>, ExperimentError> {
    if records.is_empty() {
        return Err(ExperimentError::Domain(
            "census needs at least one record".into(),
        ));
    }
    // n -> (records, components, singletons, holes)
    let mut groups: BTreeMap<u64, (usize, u64, u64, u64)> = BTreeMap::new();
    for r in records {
        let (Some(components), Some(singletons)) = (r.component_count, r.singleton_count) else {
            return Err(ExperimentError::Domain(format!(
                "record {} n={} seed={} has no component census",
                r.model, r.n, r.seed
            )));
        };
        let g = groups.entry(r.n).or_default();
        g.0 += 1;
        g.1 += components;
        g.2 += singletons;
        g.3 += r.set_size;
    }
    Ok(groups
        .into_iter()
        .map(|(n, (k, components, singletons, holes))| CensusRow {
            n,
            records: k,
            mean_component_count: components as f64 / k as f64,
            singleton_component_fraction: ratio(singletons, components),
            singleton_area_fraction: ratio(singletons, holes),
        })
        .collect())
}

fn ratio(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Component counts per size, summed over several censuses.
pub fn pooled_size_histogram<'a, I>(censuses: I) -> BTreeMap<usize, usize>
where
    I: IntoIterator<Item = &'a ComponentCensus>,
{
    let mut pooled = BTreeMap::new();
    for c in censuses {
        for (size, count) in c.size_histogram() {
            *pooled.entry(size).or_insert(0) += count;
        }
    }
    pooled
}

/// The size with the most components; ties go to the smaller size.
pub fn modal_size(histogram: &BTreeMap<usize, usize>) -> Option<usize> {
    histogram
        .iter()
        .fold(
            None,
            |best: Option<(usize, usize)>, (&size, &count)| match best {
                Some((_, c)) if c >= count => best,
                _ => Some((size, count)),
            },
        )
        .map(|(size, _)| size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::Model;
    use crate::geometry::{connected_components, Adjacency, LatticePoint, PointSet};

    fn record_for(set: &PointSet) -> SimulationRecord {
        let c = connected_components(set, Adjacency::Four);
        SimulationRecord {
            model: Model::Earthworm,
            n: 1,
            seed: 0,
            set_size: set.len() as u64,
            diameter: 0.0,
            component_count: Some(c.component_count as u64),
            singleton_count: Some(c.singleton_count as u64),
            elapsed_ms: 0,
        }
    }

    #[test]
    fn single_hole() {
        let set: PointSet = [LatticePoint::ORIGIN].into_iter().collect();
        let rows = census_report(&[record_for(&set)]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].mean_component_count, 1.0);
        assert_eq!(rows[0].singleton_component_fraction, 1.0);
    }

    #[test]
    fn hand_built_fractions() {
        let set: PointSet = [(0, 0), (0, 1), (5, 5)]
            .into_iter()
            .map(LatticePoint::from)
            .collect();
        let rows = census_report(&[record_for(&set)]).unwrap();
        assert_eq!(rows[0].singleton_component_fraction, 0.5);
        assert!((rows[0].singleton_area_fraction - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn missing_census_is_a_domain_error() {
        let mut r = record_for(&[LatticePoint::ORIGIN].into_iter().collect());
        r.singleton_count = None;
        assert!(matches!(
            census_report(&[r]),
            Err(ExperimentError::Domain(_))
        ));
        assert!(census_report(&[]).is_err());
    }

    #[test]
    fn modal_size_prefers_the_most_frequent() {
        let a = ComponentCensus::from_sizes(vec![1, 1, 2, 5]);
        let b = ComponentCensus::from_sizes(vec![2, 2, 1]);
        let h = pooled_size_histogram([&a, &b]);
        assert_eq!(h[&1], 3);
        assert_eq!(h[&2], 3);
        assert_eq!(modal_size(&h), Some(1));
        assert_eq!(modal_size(&BTreeMap::new()), None);
    }
}

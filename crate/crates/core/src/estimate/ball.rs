use rustc_hash::FxHashMap;

use super::EstimateError;
use crate::geometry::{LatticePoint, PointSet};

/// Points bucketed into square cells of a fixed side.
///
/// A Euclidean ball of radius at most the cell side overlaps at most 3×3
/// cells, so a query touches at most nine buckets.
#[derive(Debug, Clone)]
pub struct BucketGrid {
    cell: i64,
    buckets: FxHashMap<(i64, i64), Vec<LatticePoint>>,
}

impl BucketGrid {
    pub fn new(set: &PointSet, cell: u64) -> Self {
        let cell = cell.max(1) as i64;
        let mut buckets: FxHashMap<(i64, i64), Vec<LatticePoint>> = FxHashMap::default();
        for p in set {
            buckets
                .entry((p.x.div_euclid(cell), p.y.div_euclid(cell)))
                .or_default()
                .push(p);
        }
        Self { cell, buckets }
    }

    pub fn cell(&self) -> u64 {
        self.cell as u64
    }

    fn for_each_near(&self, center: LatticePoint, r: u64, mut f: impl FnMut(LatticePoint)) {
        let r = r as i64;
        let (bx0, bx1) = (
            (center.x - r).div_euclid(self.cell),
            (center.x + r).div_euclid(self.cell),
        );
        let (by0, by1) = (
            (center.y - r).div_euclid(self.cell),
            (center.y + r).div_euclid(self.cell),
        );
        for bx in bx0..=bx1 {
            for by in by0..=by1 {
                if let Some(bucket) = self.buckets.get(&(bx, by)) {
                    bucket.iter().copied().for_each(&mut f);
                }
            }
        }
    }

    /// Members within Euclidean distance `r` of `center`.
    pub fn count_within(&self, center: LatticePoint, r: u64) -> u64 {
        let r2 = (r as u128) * (r as u128);
        let mut count = 0;
        self.for_each_near(center, r, |p| {
            if p.dist2(center) <= r2 {
                count += 1;
            }
        });
        count
    }

    /// Ball counts for every radius in `radii` (ascending) around `center`,
    /// from a single pass over the buckets covering the largest radius.
    pub fn counts_within(&self, center: LatticePoint, radii: &[u64]) -> Vec<u64> {
        let Some(&r_max) = radii.last() else {
            return Vec::new();
        };
        let squares: Vec<u128> = radii.iter().map(|&r| (r as u128) * (r as u128)).collect();
        let mut counts = vec![0u64; radii.len()];
        self.for_each_near(center, r_max, |p| {
            let d2 = p.dist2(center);
            let k = squares.partition_point(|&s| s < d2);
            if k < counts.len() {
                counts[k] += 1;
            }
        });
        for i in 1..counts.len() {
            counts[i] += counts[i - 1];
        }
        counts
    }
}

/// `|{x ∈ set : |x − center| ≤ r}|` for a center taken from the set.
pub fn ball_count(set: &PointSet, center: LatticePoint, r: u64) -> Result<u64, EstimateError> {
    if !set.contains(center) {
        return Err(EstimateError::Domain(format!(
            "ball center {center} is not a member of the set"
        )));
    }
    if r == 0 {
        return Err(EstimateError::Domain("ball radius must be positive".into()));
    }
    Ok(BucketGrid::new(set, r).count_within(center, r))
}

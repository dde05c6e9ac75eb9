use rustc_hash::FxHashMap;

use super::{GeometryError, LatticePoint, PointSet};
use crate::Real;

/// Sets smaller than this use the pairwise scan for the diameter.
pub const BRUTE_FORCE_CUTOFF: usize = 64;

#[inline]
fn cross(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i128 {
    let (ax, ay) = ((a.x - o.x) as i128, (a.y - o.y) as i128);
    let (bx, by) = ((b.x - o.x) as i128, (b.y - o.y) as i128);
    ax * by - ay * bx
}

/// Convex hull vertices in counterclockwise order, starting from the
/// lexicographically smallest point. Collinear boundary points are dropped, so
/// a collinear set yields its two extremes.
pub fn convex_hull(set: &PointSet) -> Result<Vec<LatticePoint>, GeometryError> {
    if set.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    // Only the leftmost and rightmost member of each row can be a hull vertex.
    let mut rows: FxHashMap<i64, (i64, i64)> = FxHashMap::default();
    for p in set {
        rows.entry(p.y)
            .and_modify(|(lo, hi)| {
                *lo = (*lo).min(p.x);
                *hi = (*hi).max(p.x);
            })
            .or_insert((p.x, p.x));
    }
    let mut candidates: Vec<LatticePoint> = Vec::with_capacity(rows.len() * 2);
    for (&y, &(lo, hi)) in &rows {
        candidates.push(LatticePoint::new(lo, y));
        if hi != lo {
            candidates.push(LatticePoint::new(hi, y));
        }
    }
    Ok(monotone_chain(candidates))
}

fn monotone_chain(mut points: Vec<LatticePoint>) -> Vec<LatticePoint> {
    points.sort_unstable();
    points.dedup();
    if points.len() <= 2 {
        return points;
    }
    let mut lower: Vec<LatticePoint> = Vec::with_capacity(points.len());
    for &p in &points {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<LatticePoint> = Vec::with_capacity(points.len());
    for &p in points.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Largest squared distance between antipodal vertex pairs of a strictly
/// convex counterclockwise polygon.
fn rotating_calipers(hull: &[LatticePoint]) -> u128 {
    let m = hull.len();
    match m {
        0 | 1 => return 0,
        2 => return hull[0].dist2(hull[1]),
        _ => {}
    }
    let mut best = 0u128;
    let mut j = 1;
    for i in 0..m {
        let next = (i + 1) % m;
        while cross(hull[i], hull[next], hull[(j + 1) % m]) > cross(hull[i], hull[next], hull[j]) {
            j = (j + 1) % m;
        }
        best = best
            .max(hull[i].dist2(hull[j]))
            .max(hull[next].dist2(hull[j]));
    }
    best
}

fn pairwise_max(points: &[LatticePoint]) -> u128 {
    let mut best = 0;
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            best = best.max(a.dist2(b));
        }
    }
    best
}

/// Exact squared Euclidean diameter.
pub fn diameter_squared(set: &PointSet) -> Result<u128, GeometryError> {
    if set.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    if set.len() < BRUTE_FORCE_CUTOFF {
        let pts: Vec<_> = set.iter().collect();
        return Ok(pairwise_max(&pts));
    }
    let hull = convex_hull(set)?;
    Ok(rotating_calipers(&hull))
}

/// Euclidean diameter: the supremum of pairwise member distances.
pub fn diameter<F: Real>(set: &PointSet) -> Result<F, GeometryError> {
    let d2 = diameter_squared(set)?;
    Ok(F::of((d2 as f64).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(pts: &[(i64, i64)]) -> PointSet {
        pts.iter().map(|&p| LatticePoint::from(p)).collect()
    }

    #[test]
    fn single_point_has_zero_diameter() {
        assert_eq!(diameter::<f64>(&set(&[(0, 0)])).unwrap(), 0.0);
    }

    #[test]
    fn pythagorean_pair() {
        assert_eq!(diameter::<f64>(&set(&[(0, 0), (3, 4)])).unwrap(), 5.0);
        assert_eq!(diameter::<f32>(&set(&[(0, 0), (3, 4)])).unwrap(), 5.0f32);
    }

    #[test]
    fn empty_set_is_a_domain_error() {
        assert_eq!(
            diameter_squared(&PointSet::new()),
            Err(GeometryError::EmptySet)
        );
        assert_eq!(convex_hull(&PointSet::new()), Err(GeometryError::EmptySet));
    }

    #[test]
    fn hull_excludes_interior_point() {
        let h = convex_hull(&set(&[(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)])).unwrap();
        assert_eq!(
            h,
            vec![
                LatticePoint::new(0, 0),
                LatticePoint::new(2, 0),
                LatticePoint::new(2, 2),
                LatticePoint::new(0, 2)
            ]
        );
    }

    #[test]
    fn collinear_hull_is_two_extremes() {
        let h = convex_hull(&set(&[(0, 0), (1, 0), (2, 0)])).unwrap();
        assert_eq!(h, vec![LatticePoint::new(0, 0), LatticePoint::new(2, 0)]);
        let h = convex_hull(&set(&[(0, 0), (1, 1), (2, 2), (3, 3)])).unwrap();
        assert_eq!(h, vec![LatticePoint::new(0, 0), LatticePoint::new(3, 3)]);
        assert_eq!(
            convex_hull(&set(&[(4, 4)])).unwrap(),
            vec![LatticePoint::new(4, 4)]
        );
    }

    #[test]
    fn calipers_on_large_collinear_and_square_sets() {
        let line: PointSet = (0..200).map(|x| LatticePoint::new(x, 7)).collect();
        assert_eq!(diameter_squared(&line).unwrap(), 199 * 199);
        let block: PointSet = (0..20)
            .flat_map(|x| (0..10).map(move |y| LatticePoint::new(x, y)))
            .collect();
        assert_eq!(diameter_squared(&block).unwrap(), 19 * 19 + 9 * 9);
    }
}

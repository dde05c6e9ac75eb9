use std::collections::{BTreeMap, BTreeSet};
use std::ops::Bound::{Excluded, Unbounded};

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use super::{Direction, RandomSource, SimError};
use crate::geometry::{BoundingBox, LatticePoint, PointSet};

/// Which hole absorbs the soil pushed by a move into soil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FillRule {
    /// The nearest hole anywhere ahead on the ray; the pushed column of soil
    /// slides forward until it reaches it.
    #[default]
    NearestOnRay,
    /// Only a hole directly behind the displaced particle is filled.
    AdjacentOnly,
}

/// Set of holes with per-row and per-column ordered indices.
#[derive(Debug, Clone, Default)]
pub struct HoleSet {
    members: FxHashSet<LatticePoint>,
    /// y -> sorted x coordinates of holes in that row.
    rows: BTreeMap<i64, BTreeSet<i64>>,
    /// x -> sorted y coordinates of holes in that column.
    cols: BTreeMap<i64, BTreeSet<i64>>,
}

impl HoleSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: LatticePoint) -> bool {
        if !self.members.insert(p) {
            return false;
        }
        self.rows.entry(p.y).or_default().insert(p.x);
        self.cols.entry(p.x).or_default().insert(p.y);
        true
    }

    pub fn remove(&mut self, p: LatticePoint) -> bool {
        if !self.members.remove(&p) {
            return false;
        }
        remove_from_index(&mut self.rows, p.y, p.x);
        remove_from_index(&mut self.cols, p.x, p.y);
        true
    }

    #[inline]
    pub fn contains(&self, p: LatticePoint) -> bool {
        self.members.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.members.iter().copied()
    }

    /// Tight bounding box, read off the ordered indices.
    pub fn bbox(&self) -> BoundingBox {
        match (
            self.cols.first_key_value(),
            self.cols.last_key_value(),
            self.rows.first_key_value(),
            self.rows.last_key_value(),
        ) {
            (Some((&xmin, _)), Some((&xmax, _)), Some((&ymin, _)), Some((&ymax, _))) => {
                BoundingBox::Bounds {
                    xmin,
                    xmax,
                    ymin,
                    ymax,
                }
            }
            _ => BoundingBox::Empty,
        }
    }

    pub fn to_point_set(&self) -> PointSet {
        self.iter().collect()
    }

    /// The hole `start + k·dir` with the smallest `k >= 1`, if any.
    pub fn nearest_along_ray(&self, start: LatticePoint, dir: Direction) -> Option<LatticePoint> {
        let (x, y) = (start.x, start.y);
        match dir {
            Direction::East => self
                .rows
                .get(&y)?
                .range((Excluded(x), Unbounded))
                .next()
                .map(|&hx| LatticePoint::new(hx, y)),
            Direction::West => self
                .rows
                .get(&y)?
                .range(..x)
                .next_back()
                .map(|&hx| LatticePoint::new(hx, y)),
            Direction::North => self
                .cols
                .get(&x)?
                .range((Excluded(y), Unbounded))
                .next()
                .map(|&hy| LatticePoint::new(x, hy)),
            Direction::South => self
                .cols
                .get(&x)?
                .range(..y)
                .next_back()
                .map(|&hy| LatticePoint::new(x, hy)),
        }
    }

    /// Checks that both ordered indices hold exactly the members.
    pub fn is_consistent(&self) -> bool {
        let mut rebuilt = HoleSet::new();
        for p in self.iter() {
            rebuilt.insert(p);
        }
        let row_total: usize = self.rows.values().map(BTreeSet::len).sum();
        let col_total: usize = self.cols.values().map(BTreeSet::len).sum();
        rebuilt.rows == self.rows
            && rebuilt.cols == self.cols
            && row_total == self.len()
            && col_total == self.len()
    }
}

fn remove_from_index(index: &mut BTreeMap<i64, BTreeSet<i64>>, key: i64, value: i64) {
    if let Some(line) = index.get_mut(&key) {
        line.remove(&value);
        if line.is_empty() {
            index.remove(&key);
        }
    }
}

impl FromIterator<LatticePoint> for HoleSet {
    fn from_iter<I: IntoIterator<Item = LatticePoint>>(iter: I) -> Self {
        let mut h = HoleSet::new();
        for p in iter {
            h.insert(p);
        }
        h
    }
}

/// What a single worm step did to the hole set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepOutcome {
    /// Moved into an existing hole.
    Moved,
    /// Displaced soil and left a net new hole.
    Created,
    /// Displaced soil that filled the given hole; hole count unchanged.
    Filled(LatticePoint),
}

/// The earthworm and the holes it has left behind.
#[derive(Debug, Clone)]
pub struct WormState {
    pub worm: LatticePoint,
    pub holes: HoleSet,
    pub steps: u64,
    /// Steps that left a net new hole.
    pub creations: u64,
    /// Steps whose displaced soil filled an existing hole.
    pub fills: u64,
    /// Steps into an existing hole.
    pub moves: u64,
    pub fill_rule: FillRule,
}

impl Default for WormState {
    fn default() -> Self {
        Self::new(FillRule::default())
    }
}

impl WormState {
    /// Worm at the origin, sitting in the only hole.
    pub fn new(fill_rule: FillRule) -> Self {
        let mut holes = HoleSet::new();
        holes.insert(LatticePoint::ORIGIN);
        Self {
            worm: LatticePoint::ORIGIN,
            holes,
            steps: 0,
            creations: 0,
            fills: 0,
            moves: 0,
            fill_rule,
        }
    }

    /// Builds a state from an explicit hole set; `worm` is added as a hole.
    pub fn from_holes(worm: LatticePoint, holes: HoleSet, fill_rule: FillRule) -> Self {
        let mut holes = holes;
        holes.insert(worm);
        Self {
            worm,
            holes,
            steps: 0,
            creations: 0,
            fills: 0,
            moves: 0,
            fill_rule,
        }
    }

    pub fn step(&mut self, dir: Direction) -> StepOutcome {
        let target = self.worm + dir.offset();
        self.steps += 1;
        self.worm = target;
        if self.holes.contains(target) {
            self.moves += 1;
            return StepOutcome::Moved;
        }
        // The particle at `target` is pushed forward together with every
        // particle behind it; the column shifts by one into the first hole.
        let absorber = match self.fill_rule {
            FillRule::NearestOnRay => self.holes.nearest_along_ray(target, dir),
            FillRule::AdjacentOnly => {
                Some(target + dir.offset()).filter(|&q| self.holes.contains(q))
            }
        };
        self.holes.insert(target);
        match absorber {
            Some(hole) => {
                self.holes.remove(hole);
                self.fills += 1;
                StepOutcome::Filled(hole)
            }
            None => {
                self.creations += 1;
                StepOutcome::Created
            }
        }
    }

    /// Like [`WormState::step`], for a raw offset that must be a unit step.
    pub fn step_offset(&mut self, offset: LatticePoint) -> Result<StepOutcome, SimError> {
        Ok(self.step(Direction::try_from(offset)?))
    }

    /// `worm ∈ holes`, `|holes| = 1 + creations`, `|holes| <= steps + 1`, and
    /// every step accounted for exactly once.
    pub fn ledger_holds(&self) -> bool {
        let n = self.holes.len() as u64;
        self.holes.contains(self.worm)
            && n == 1 + self.creations
            && n <= self.steps + 1
            && self.creations + self.fills + self.moves == self.steps
    }
}

pub fn simulate_earthworm(n: u64, seed: u64) -> WormState {
    simulate_earthworm_with(n, seed, FillRule::NearestOnRay)
}

pub fn simulate_earthworm_with(n: u64, seed: u64, rule: FillRule) -> WormState {
    let mut rng = RandomSource::new(seed);
    let mut state = WormState::new(rule);
    for _ in 0..n {
        state.step(rng.direction());
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    #[test]
    fn ray_query_examples() {
        let holes: HoleSet = [p(0, 0)].into_iter().collect();
        assert_eq!(holes.nearest_along_ray(p(0, 0), Direction::East), None);
        let holes: HoleSet = [p(0, 0), p(3, 0), p(7, 0)].into_iter().collect();
        assert_eq!(
            holes.nearest_along_ray(p(0, 0), Direction::East),
            Some(p(3, 0))
        );
        assert_eq!(
            holes.nearest_along_ray(p(7, 0), Direction::West),
            Some(p(3, 0))
        );
        assert_eq!(
            holes.nearest_along_ray(p(3, 5), Direction::South),
            Some(p(3, 0))
        );
        assert_eq!(holes.nearest_along_ray(p(3, 0), Direction::North), None);
    }

    #[test]
    fn first_step_creates_a_hole() {
        let mut s = WormState::default();
        assert_eq!(s.step(Direction::East), StepOutcome::Created);
        assert_eq!(s.worm, p(1, 0));
        assert_eq!(
            s.holes.to_point_set(),
            [p(0, 0), p(1, 0)].into_iter().collect()
        );
        assert_eq!((s.creations, s.fills), (1, 0));

        assert_eq!(s.step(Direction::West), StepOutcome::Moved);
        assert_eq!(s.worm, p(0, 0));
        assert_eq!(s.holes.len(), 2);
        assert!(s.ledger_holds());
    }

    #[test]
    fn push_fills_nearest_hole_ahead() {
        let holes: HoleSet = [p(2, 0)].into_iter().collect();
        let mut s = WormState::from_holes(p(0, 0), holes, FillRule::NearestOnRay);
        assert_eq!(s.step(Direction::East), StepOutcome::Filled(p(2, 0)));
        assert_eq!(
            s.holes.to_point_set(),
            [p(0, 0), p(1, 0)].into_iter().collect()
        );
        assert_eq!(s.worm, p(1, 0));
        assert_eq!(s.fills, 1);
        assert!(s.holes.is_consistent());
    }

    #[test]
    fn adjacent_rule_ignores_distant_holes() {
        let holes: HoleSet = [p(3, 0)].into_iter().collect();
        let mut s = WormState::from_holes(p(0, 0), holes.clone(), FillRule::AdjacentOnly);
        assert_eq!(s.step(Direction::East), StepOutcome::Created);
        let mut s = WormState::from_holes(p(1, 0), holes, FillRule::AdjacentOnly);
        assert_eq!(s.step(Direction::East), StepOutcome::Filled(p(3, 0)));
    }

    #[test]
    fn invalid_offset_is_rejected() {
        let mut s = WormState::default();
        assert_eq!(
            s.step_offset(p(2, 0)),
            Err(SimError::InvalidDirection(p(2, 0)))
        );
        assert_eq!(s.steps, 0);
        assert_eq!(s.step_offset(p(0, -1)), Ok(StepOutcome::Created));
    }

    #[test]
    fn zero_steps() {
        let s = simulate_earthworm(0, 1);
        assert_eq!(s.holes.len(), 1);
        assert_eq!((s.creations, s.fills), (0, 0));
    }

    #[test]
    fn every_hole_lies_on_the_trajectory() {
        let mut rng = RandomSource::new(77);
        let mut s = WormState::default();
        let mut visited = FxHashSet::default();
        visited.insert(s.worm);
        for _ in 0..5000 {
            s.step(rng.direction());
            visited.insert(s.worm);
        }
        assert!(s.holes.iter().all(|h| visited.contains(&h)));
        assert!(s.ledger_holds());
        assert!(s.holes.is_consistent());
        assert_eq!(s.holes.bbox(), s.holes.to_point_set().bbox());
    }
}

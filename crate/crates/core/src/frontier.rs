//! Outer boundary of a lattice trace.
//!
//! The complement of the trace is flood-filled inside the trace's bounding
//! box grown by one cell. Every complement cell reachable from the padding
//! ring belongs to the unbounded component, and the frontier is the set of
//! trace points touching that region.

use serde::{Deserialize, Serialize};

use crate::geometry::{BoundingBox, GeometryError, LatticePoint, PointSet};

/// Connectivity conventions for the complement flood fill.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum FrontierConnectivity {
    /// Complement flooded through edge neighbours; trace points touch it
    /// through edge neighbours.
    #[default]
    Four,
    /// Complement flooded through edge and corner neighbours; trace points
    /// still touch it through edge neighbours.
    EightFour,
}

#[derive(Debug, Clone)]
pub struct FrontierResult {
    pub frontier: PointSet,
    pub trace_size: usize,
    /// Complement cells of the unbounded component inside the padded box.
    pub outside_cells: usize,
}

const EMPTY: u8 = 0;
const TRACE: u8 = 1;
const OUTSIDE: u8 = 2;

struct Grid {
    x0: i64,
    y0: i64,
    width: usize,
    height: usize,
    cells: Vec<u8>,
}

impl Grid {
    fn padded(set: &PointSet) -> Grid {
        let BoundingBox::Bounds {
            xmin,
            xmax,
            ymin,
            ymax,
        } = set.bbox()
        else {
            unreachable!("caller checks for the empty set")
        };
        let width = (xmax - xmin + 3) as usize;
        let height = (ymax - ymin + 3) as usize;
        let mut grid = Grid {
            x0: xmin - 1,
            y0: ymin - 1,
            width,
            height,
            cells: vec![EMPTY; width * height],
        };
        for p in set {
            let i = grid.index(p);
            grid.cells[i] = TRACE;
        }
        grid
    }

    #[inline]
    fn index(&self, p: LatticePoint) -> usize {
        (p.y - self.y0) as usize * self.width + (p.x - self.x0) as usize
    }
}

pub fn extract_frontier(trace: &PointSet) -> Result<FrontierResult, GeometryError> {
    extract_frontier_with(trace, FrontierConnectivity::Four)
}

pub fn extract_frontier_with(
    trace: &PointSet,
    connectivity: FrontierConnectivity,
) -> Result<FrontierResult, GeometryError> {
    if trace.is_empty() {
        return Err(GeometryError::EmptySet);
    }
    let mut grid = Grid::padded(trace);
    let (w, h) = (grid.width, grid.height);

    // Cell (0, 0) of the padded box is always in the padding ring.
    let mut stack = vec![0usize];
    grid.cells[0] = OUTSIDE;
    let mut outside_cells = 1usize;
    while let Some(i) = stack.pop() {
        let (cx, cy) = (i % w, i / w);
        let mut visit = |nx: usize, ny: usize| {
            let j = ny * w + nx;
            if grid.cells[j] == EMPTY {
                grid.cells[j] = OUTSIDE;
                outside_cells += 1;
                stack.push(j);
            }
        };
        let (left, right, down, up) = (cx > 0, cx + 1 < w, cy > 0, cy + 1 < h);
        if left {
            visit(cx - 1, cy);
        }
        if right {
            visit(cx + 1, cy);
        }
        if down {
            visit(cx, cy - 1);
        }
        if up {
            visit(cx, cy + 1);
        }
        if connectivity == FrontierConnectivity::EightFour {
            if left && down {
                visit(cx - 1, cy - 1);
            }
            if left && up {
                visit(cx - 1, cy + 1);
            }
            if right && down {
                visit(cx + 1, cy - 1);
            }
            if right && up {
                visit(cx + 1, cy + 1);
            }
        }
    }

    // Trace cells never sit on the padding ring, so all four neighbours exist.
    let frontier: PointSet = trace
        .iter()
        .filter(|&p| {
            let i = grid.index(p);
            grid.cells[i - 1] == OUTSIDE
                || grid.cells[i + 1] == OUTSIDE
                || grid.cells[i - w] == OUTSIDE
                || grid.cells[i + w] == OUTSIDE
        })
        .collect();

    Ok(FrontierResult {
        frontier,
        trace_size: trace.len(),
        outside_cells,
    })
}

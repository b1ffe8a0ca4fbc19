use std::collections::{HashMap, HashSet};

use crate::geometry::{point_segment_distance, BBox, Point2};
use crate::graph::{EmbeddedGraph, GraphLocation};

/// Uniform bucket grid over edge geometry.
///
/// Every edge is registered in every cell its geometry passes through, so a
/// box query returns a superset of the edges meeting the box.
#[derive(Debug, Clone)]
pub struct SpatialGrid {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
    // Inclusive cell range covering all registered geometry.
    range: Option<((i64, i64), (i64, i64))>,
}

impl SpatialGrid {
    pub fn build(g: &EmbeddedGraph, cell: f64) -> Self {
        assert!(cell > 0.0, "grid cell size must be positive");
        let mut grid = Self { cell, buckets: HashMap::new(), range: None };
        for (ei, e) in g.edges().iter().enumerate() {
            let pts = e.geometry.points();
            let mut cells = HashSet::new();
            if pts.len() == 1 {
                cells.insert(grid.cell_of(pts[0]));
            }
            for w in pts.windows(2) {
                grid.segment_cells(w[0], w[1], &mut cells);
            }
            let mut cells: Vec<_> = cells.into_iter().collect();
            cells.sort_unstable();
            for c in cells {
                grid.buckets.entry(c).or_default().push(ei);
                grid.range = Some(match grid.range {
                    None => (c, c),
                    Some((lo, hi)) => ((lo.0.min(c.0), lo.1.min(c.1)), (hi.0.max(c.0), hi.1.max(c.1))),
                });
            }
        }
        grid
    }

    pub fn cell_size(&self) -> f64 {
        self.cell
    }

    fn cell_of(&self, p: Point2) -> (i64, i64) {
        ((p.x / self.cell).floor() as i64, (p.y / self.cell).floor() as i64)
    }

    /// Cells crossed by segment `a`-`b`, found column strip by column strip.
    fn segment_cells(&self, a: Point2, b: Point2, out: &mut HashSet<(i64, i64)>) {
        let (ca, cb) = (self.cell_of(a), self.cell_of(b));
        let (x0, x1) = (ca.0.min(cb.0), ca.0.max(cb.0));
        for cx in x0..=x1 {
            let strip_lo = cx as f64 * self.cell;
            let strip_hi = strip_lo + self.cell;
            let (ylo, yhi) = if a.x == b.x {
                (a.y.min(b.y), a.y.max(b.y))
            } else {
                let t0 = ((strip_lo - a.x) / (b.x - a.x)).clamp(0.0, 1.0);
                let t1 = ((strip_hi - a.x) / (b.x - a.x)).clamp(0.0, 1.0);
                let (y0, y1) = (a.y + (b.y - a.y) * t0, a.y + (b.y - a.y) * t1);
                (y0.min(y1), y0.max(y1))
            };
            let (cy0, cy1) = ((ylo / self.cell).floor() as i64, (yhi / self.cell).floor() as i64);
            for cy in cy0..=cy1 {
                out.insert((cx, cy));
            }
        }
    }

    /// Sorted, deduplicated edges registered in cells overlapping `bb`.
    pub fn edges_in_bbox(&self, bb: BBox) -> Vec<usize> {
        let Some(((rx0, ry0), (rx1, ry1))) = self.range else {
            return Vec::new();
        };
        let (lo, hi) = (self.cell_of(bb.min), self.cell_of(bb.max));
        let (x0, x1) = (lo.0.max(rx0), hi.0.min(rx1));
        let (y0, y1) = (lo.1.max(ry0), hi.1.min(ry1));
        let mut out = Vec::new();
        if x0 <= x1 && y0 <= y1 {
            let span = ((x1 - x0 + 1) as u128) * ((y1 - y0 + 1) as u128);
            if span as usize > self.buckets.len() {
                for (&(cx, cy), edges) in &self.buckets {
                    if (x0..=x1).contains(&cx) && (y0..=y1).contains(&cy) {
                        out.extend_from_slice(edges);
                    }
                }
            } else {
                for cx in x0..=x1 {
                    for cy in y0..=y1 {
                        if let Some(edges) = self.buckets.get(&(cx, cy)) {
                            out.extend_from_slice(edges);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Closest point of any edge to `p`, searching rings of cells outward.
    pub fn nearest(&self, g: &EmbeddedGraph, p: Point2) -> Option<(GraphLocation, f64)> {
        let ((rx0, ry0), (rx1, ry1)) = self.range?;
        let (cx, cy) = self.cell_of(p);
        let max_ring = [cx - rx0, rx1 - cx, cy - ry0, ry1 - cy].into_iter().max().unwrap_or(0).max(0);
        let mut seen = HashSet::new();
        let mut best: Option<(GraphLocation, f64)> = None;
        for r in 0..=max_ring {
            for (x, y) in ring(cx, cy, r) {
                let Some(edges) = self.buckets.get(&(x, y)) else { continue };
                for &e in edges {
                    if seen.insert(e) {
                        if let Some(cand) = closest_on_edge(g, e, p) {
                            if best.as_ref().is_none_or(|b| cand.1 < b.1 || (cand.1 == b.1 && cand.0.edge < b.0.edge)) {
                                best = Some(cand);
                            }
                        }
                    }
                }
            }
            if let Some(b) = &best {
                if b.1 <= r as f64 * self.cell {
                    break;
                }
            }
        }
        best
    }
}

fn ring(cx: i64, cy: i64, r: i64) -> Vec<(i64, i64)> {
    if r == 0 {
        return vec![(cx, cy)];
    }
    let mut cells = Vec::with_capacity(8 * r as usize);
    for x in cx - r..=cx + r {
        cells.push((x, cy - r));
        cells.push((x, cy + r));
    }
    for y in cy - r + 1..cy + r {
        cells.push((cx - r, y));
        cells.push((cx + r, y));
    }
    cells
}

pub(crate) fn closest_on_edge(g: &EmbeddedGraph, e: usize, p: Point2) -> Option<(GraphLocation, f64)> {
    let pts = g.edge(e).geometry.points();
    let mut acc = 0.0;
    let mut best: Option<(GraphLocation, f64)> = None;
    for w in pts.windows(2) {
        let (d, t) = point_segment_distance(p, w[0], w[1]);
        let len = w[0].dist(w[1]);
        if best.as_ref().is_none_or(|b| d < b.1) {
            best = Some((GraphLocation { edge: e, offset: acc + t * len, point: w[0].lerp(w[1], t) }, d));
        }
        acc += len;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::straight;

    #[test]
    fn long_diagonal_registered_in_crossed_cells_only() {
        let g = straight(&[(0.5, 0.5), (9.5, 9.5)], &[(0, 1)]);
        let grid = SpatialGrid::build(&g, 1.0);
        assert!(grid.edges_in_bbox(BBox { min: Point2::new(5.1, 5.1), max: Point2::new(5.2, 5.2) }).contains(&0));
        assert!(grid.edges_in_bbox(BBox { min: Point2::new(8.1, 1.1), max: Point2::new(8.2, 1.2) }).is_empty());
    }

    #[test]
    fn nearest_agrees_with_exhaustive_scan() {
        let g = straight(
            &[(0.0, 0.0), (10.0, 0.0), (10.0, 10.0), (3.0, 7.0), (-20.0, 40.0)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)],
        );
        let grid = SpatialGrid::build(&g, 2.5);
        for &(x, y) in &[(5.0, 5.0), (-30.0, -30.0), (11.0, 3.0), (-10.0, 30.0), (100.0, 100.0), (4.0, 0.1)] {
            let p = Point2::new(x, y);
            let (_, d) = grid.nearest(&g, p).unwrap();
            let (_, exact) = g.closest_location(p).unwrap();
            assert!((d - exact).abs() < 1e-12, "{p:?}: {d} vs {exact}");
        }
    }

    #[test]
    fn empty_graph_has_no_nearest() {
        let g = EmbeddedGraph::new();
        let grid = SpatialGrid::build(&g, 1.0);
        assert!(grid.nearest(&g, Point2::new(0.0, 0.0)).is_none());
    }
}

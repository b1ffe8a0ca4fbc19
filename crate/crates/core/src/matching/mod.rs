//! Fréchet map-matching of a curve into an embedded graph.
//!
//! The decision sweeps the curve one segment at a time. Every edge of the
//! target graph is split into straight pieces, and each piece is used in
//! both directions ("darts"). For a fixed curve segment the free space over
//! one dart is a convex cell, so the reachable part of each cell boundary is
//! an interval whose upper end is the free-space boundary: only its lowest
//! point has to be tracked. Inside a column, reachability spreads across
//! junctions in order of the curve parameter, like Dijkstra with
//! `max(entry, free.lo)` as the relaxation.
//!
//! Direction changes happen only at graph vertices (including u-turns);
//! interior bends of an edge just pass a walk on to the next piece in the
//! same direction. Matched paths may start and end anywhere on an edge.

mod grid;

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap};

pub use grid::SpatialGrid;

use crate::error::{Error, Result};
use crate::frechet::DEFAULT_TOLERANCE;
use crate::geometry::{segment_disc_interval, BBox, FreeInterval, Point2, PolyLine};
use crate::graph::{EmbeddedGraph, GraphLocation};

/// Default spatial grid cell size in meters.
pub const DEFAULT_CELL_SIZE: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchOptions {
    pub cell_size: f64,
    /// Skip the spatial index and consider every edge for every query.
    pub exhaustive: bool,
}

impl Default for MatchOptions {
    fn default() -> Self {
        Self { cell_size: DEFAULT_CELL_SIZE, exhaustive: false }
    }
}

/// A curve to match, with the absolute tolerance of the search.
#[derive(Debug, Clone)]
pub struct MatchQuery {
    pub curve: PolyLine,
    pub tolerance: f64,
}

impl MatchQuery {
    pub fn new(curve: PolyLine, tolerance: f64) -> Result<Self> {
        if !(tolerance > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance must be positive, got {tolerance}")));
        }
        Ok(Self { curve, tolerance })
    }
}

/// One matched path in the target graph together with the curve parameter
/// (segment index plus fraction) at which each of its points is visited.
#[derive(Debug, Clone)]
pub struct MatchWitness {
    pub path: PolyLine,
    pub curve_params: Vec<f64>,
}

/// Reachable boundary intervals of one sweep step, one slot per dart.
#[derive(Debug, Clone)]
pub struct ReachabilityFront {
    pub intervals: Vec<Option<FreeInterval>>,
}

impl ReachabilityFront {
    pub fn is_empty(&self) -> bool {
        self.intervals.iter().all(Option::is_none)
    }
}

#[derive(Debug, Clone, Copy)]
struct Dart {
    tail: usize,
    head: usize,
    a: Point2,
    b: Point2,
}

/// Darts and junctions for a subset of the target graph's edges.
///
/// A graph vertex is one junction. An interior bend of an edge is two
/// junctions, one per travel direction, so a walk cannot reverse there.
#[derive(Debug, Default)]
struct DartGraph {
    junctions: Vec<Point2>,
    darts: Vec<Dart>,
    out: Vec<Vec<usize>>,
}

impl DartGraph {
    fn build(g: &EmbeddedGraph, edges: &[usize]) -> Self {
        let mut dg = Self::default();
        let mut vertex_junction: HashMap<usize, usize> = HashMap::new();
        for &ei in edges {
            let e = g.edge(ei);
            let pts = e.geometry.collapsed().into_points();
            let ja = dg.vertex_junction(&mut vertex_junction, e.a, g);
            let jb = dg.vertex_junction(&mut vertex_junction, e.b, g);
            if pts.len() == 1 {
                // Coincident endpoints: a zero-length connection.
                dg.add_dart(ja, jb, pts[0], pts[0]);
                dg.add_dart(jb, ja, pts[0], pts[0]);
                continue;
            }
            let interior = pts.len() - 2;
            let fwd: Vec<usize> = (0..interior).map(|i| dg.add_junction(pts[i + 1])).collect();
            let bwd: Vec<usize> = (0..interior).map(|i| dg.add_junction(pts[i + 1])).collect();
            for s in 0..pts.len() - 1 {
                let tail = if s == 0 { ja } else { fwd[s - 1] };
                let head = if s == pts.len() - 2 { jb } else { fwd[s] };
                dg.add_dart(tail, head, pts[s], pts[s + 1]);
                let tail = if s == pts.len() - 2 { jb } else { bwd[s] };
                let head = if s == 0 { ja } else { bwd[s - 1] };
                dg.add_dart(tail, head, pts[s + 1], pts[s]);
            }
        }
        dg
    }

    fn vertex_junction(&mut self, map: &mut HashMap<usize, usize>, v: usize, g: &EmbeddedGraph) -> usize {
        if let Some(&j) = map.get(&v) {
            return j;
        }
        let j = self.add_junction(g.vertex(v).point);
        map.insert(v, j);
        j
    }

    fn add_junction(&mut self, p: Point2) -> usize {
        self.junctions.push(p);
        self.out.push(Vec::new());
        self.junctions.len() - 1
    }

    fn add_dart(&mut self, tail: usize, head: usize, a: Point2, b: Point2) {
        self.out[tail].push(self.darts.len());
        self.darts.push(Dart { tail, head, a, b });
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[derive(Debug, Clone, Copy)]
enum JunctionFrom {
    /// Reached along a dart entered through the column's left boundary.
    Left(usize),
    /// Reached along a dart entered from its tail junction.
    Bottom(usize),
}

#[derive(Debug, Clone, Copy)]
enum LeftFrom {
    Left,
    Bottom,
}

/// Provenance of one column, kept only when a witness is requested.
#[derive(Debug, Default)]
struct ColumnTrace {
    junction_low: Vec<f64>,
    junction_from: Vec<Option<JunctionFrom>>,
    left_from: Vec<Option<LeftFrom>>,
}

#[derive(Debug, Default)]
struct Trace {
    // `fronts[i]`: lowest reachable dart parameter at curve vertex `i`.
    fronts: Vec<Vec<Option<f64>>>,
    columns: Vec<ColumnTrace>,
}

/// Sweeps the curve through the free space over `dg`. Returns an accepting
/// dart at the final curve vertex, if any.
fn sweep(dg: &DartGraph, curve: &[Point2], eps: f64, mut trace: Option<&mut Trace>) -> Option<usize> {
    let nd = dg.darts.len();
    let nj = dg.junctions.len();
    let mut left: Vec<Option<f64>> = dg
        .darts
        .iter()
        .map(|d| segment_disc_interval(d.a, d.b, curve[0], eps).map(|iv| iv.lo))
        .collect();
    if let Some(t) = trace.as_deref_mut() {
        t.fronts.push(left.clone());
    }

    let mut low = vec![f64::INFINITY; nj];
    let mut bottom_entry: Vec<bool> = vec![false; nd];
    let mut heap = BinaryHeap::new();
    for i in 0..curve.len() - 1 {
        let (c0, c1) = (curve[i], curve[i + 1]);
        let jfree: Vec<Option<FreeInterval>> = dg.junctions.iter().map(|&p| segment_disc_interval(c0, c1, p, eps)).collect();
        low.iter_mut().for_each(|l| *l = f64::INFINITY);
        bottom_entry.iter_mut().for_each(|b| *b = false);
        let mut jfrom: Vec<Option<JunctionFrom>> = if trace.is_some() { vec![None; nj] } else { Vec::new() };

        for (di, d) in dg.darts.iter().enumerate() {
            if left[di].is_none() {
                continue;
            }
            if let Some(iv) = jfree[d.head] {
                if iv.lo < low[d.head] {
                    low[d.head] = iv.lo;
                    if trace.is_some() {
                        jfrom[d.head] = Some(JunctionFrom::Left(di));
                    }
                    heap.push(Reverse((Key(iv.lo), d.head)));
                }
            }
        }
        while let Some(Reverse((Key(s), j))) = heap.pop() {
            if s > low[j] {
                continue;
            }
            for &di in &dg.out[j] {
                if bottom_entry[di] {
                    continue;
                }
                bottom_entry[di] = true;
                let head = dg.darts[di].head;
                if let Some(iv) = jfree[head] {
                    let cand = s.max(iv.lo);
                    if cand <= iv.hi && cand < low[head] {
                        low[head] = cand;
                        if trace.is_some() {
                            jfrom[head] = Some(JunctionFrom::Bottom(di));
                        }
                        heap.push(Reverse((Key(cand), head)));
                    }
                }
            }
        }

        let mut lfrom: Vec<Option<LeftFrom>> = if trace.is_some() { vec![None; nd] } else { Vec::new() };
        let mut next = vec![None; nd];
        for (di, d) in dg.darts.iter().enumerate() {
            let Some(rf) = segment_disc_interval(d.a, d.b, c1, eps) else { continue };
            if bottom_entry[di] {
                next[di] = Some(rf.lo);
                if trace.is_some() {
                    lfrom[di] = Some(LeftFrom::Bottom);
                }
            } else if let Some(l) = left[di] {
                let lo = l.max(rf.lo);
                if lo <= rf.hi {
                    next[di] = Some(lo);
                    if trace.is_some() {
                        lfrom[di] = Some(LeftFrom::Left);
                    }
                }
            }
        }
        left = next;
        if let Some(t) = trace.as_deref_mut() {
            t.columns.push(ColumnTrace { junction_low: low.clone(), junction_from: jfrom, left_from: lfrom });
            t.fronts.push(left.clone());
        }
    }
    left.iter().position(Option::is_some)
}

fn reconstruct(dg: &DartGraph, trace: &Trace, accept: usize) -> MatchWitness {
    enum State {
        Left { vertex: usize, dart: usize },
        Junction { column: usize, junction: usize },
    }
    let mut points = Vec::new();
    let mut params = Vec::new();
    let mut state = State::Left { vertex: trace.fronts.len() - 1, dart: accept };
    loop {
        state = match state {
            State::Left { vertex, dart } => {
                let d = dg.darts[dart];
                let t = trace.fronts[vertex][dart].expect("traced state is reachable");
                points.push(d.a.lerp(d.b, t));
                params.push(vertex as f64);
                if vertex == 0 {
                    break;
                }
                match trace.columns[vertex - 1].left_from[dart].expect("traced state has a source") {
                    LeftFrom::Left => State::Left { vertex: vertex - 1, dart },
                    LeftFrom::Bottom => State::Junction { column: vertex - 1, junction: d.tail },
                }
            }
            State::Junction { column, junction } => {
                let col = &trace.columns[column];
                points.push(dg.junctions[junction]);
                params.push(column as f64 + col.junction_low[junction]);
                match col.junction_from[junction].expect("traced junction has a source") {
                    JunctionFrom::Left(di) => State::Left { vertex: column, dart: di },
                    JunctionFrom::Bottom(di) => State::Junction { column, junction: dg.darts[di].tail },
                }
            }
        };
    }
    points.reverse();
    params.reverse();
    let mut path: Vec<Point2> = Vec::with_capacity(points.len());
    let mut curve_params = Vec::with_capacity(points.len());
    for (p, s) in points.into_iter().zip(params) {
        if path.last() == Some(&p) {
            continue;
        }
        path.push(p);
        curve_params.push(s);
    }
    MatchWitness { path: PolyLine::new(path).expect("witness has a point"), curve_params }
}

/// Map-matching queries against one target graph.
///
/// Holds the graph's spatial index; cheap to share between threads.
#[derive(Debug)]
pub struct Matcher<'g> {
    graph: &'g EmbeddedGraph,
    grid: Option<SpatialGrid>,
    isolated: Vec<usize>,
}

impl<'g> Matcher<'g> {
    pub fn new(graph: &'g EmbeddedGraph, options: MatchOptions) -> Self {
        let grid = (!options.exhaustive).then(|| SpatialGrid::build(graph, options.cell_size));
        let isolated = (0..graph.vertex_count()).filter(|&v| graph.degree(v) == 0).collect();
        Self { graph, grid, isolated }
    }

    pub fn graph(&self) -> &'g EmbeddedGraph {
        self.graph
    }

    fn candidate_edges(&self, bb: BBox) -> Vec<usize> {
        match &self.grid {
            Some(grid) => grid.edges_in_bbox(bb),
            None => (0..self.graph.edge_count()).collect(),
        }
    }

    fn local(&self, curve: &[Point2], eps: f64) -> DartGraph {
        let bb = BBox::of_points(curve).expect("non-empty curve").expand(eps);
        DartGraph::build(self.graph, &self.candidate_edges(bb))
    }

    /// Closest point of the graph to `p`, including isolated vertices.
    pub fn nearest(&self, p: Point2) -> Option<(Option<GraphLocation>, f64)> {
        let on_edge = match &self.grid {
            Some(grid) => grid.nearest(self.graph, p),
            None => self.graph.closest_location(p),
        };
        let mut best = on_edge.map(|(loc, d)| (Some(loc), d));
        for &v in &self.isolated {
            let d = self.graph.vertex(v).point.dist(p);
            if best.as_ref().is_none_or(|b| d < b.1) {
                best = Some((None, d));
            }
        }
        best
    }

    fn isolated_within(&self, curve: &[Point2], eps: f64) -> Option<Point2> {
        self.isolated
            .iter()
            .map(|&v| self.graph.vertex(v).point)
            .find(|p| curve.iter().all(|c| c.dist(*p) <= eps))
    }

    fn decide_in(&self, dg: &DartGraph, curve: &[Point2], eps: f64) -> bool {
        if self.isolated_within(curve, eps).is_some() {
            return true;
        }
        if curve.len() == 1 {
            return dg.darts.iter().any(|d| segment_disc_interval(d.a, d.b, curve[0], eps).is_some());
        }
        sweep(dg, curve, eps, None).is_some()
    }

    /// Whether some path of the graph lies within Fréchet distance `eps` of `curve`.
    pub fn decide(&self, curve: &PolyLine, eps: f64) -> Result<bool> {
        if eps.is_nan() || eps < 0.0 {
            return Err(Error::InvalidInput(format!("eps must be a non-negative number, got {eps}")));
        }
        let c = curve.collapsed();
        let dg = self.local(c.points(), eps);
        Ok(self.decide_in(&dg, c.points(), eps))
    }

    /// A path realising the decision at `eps`, if one exists.
    pub fn witness(&self, curve: &PolyLine, eps: f64) -> Result<Option<MatchWitness>> {
        if eps.is_nan() || eps < 0.0 {
            return Err(Error::InvalidInput(format!("eps must be a non-negative number, got {eps}")));
        }
        let c = curve.collapsed();
        let pts = c.points();
        if let Some(p) = self.isolated_within(pts, eps) {
            let path = PolyLine::new(vec![p])?;
            return Ok(Some(MatchWitness { path, curve_params: vec![0.0] }));
        }
        let dg = self.local(pts, eps);
        if pts.len() == 1 {
            let hit = dg.darts.iter().find_map(|d| {
                segment_disc_interval(d.a, d.b, pts[0], eps).map(|iv| d.a.lerp(d.b, iv.lo))
            });
            return Ok(hit.map(|p| MatchWitness { path: PolyLine::new(vec![p]).expect("one point"), curve_params: vec![0.0] }));
        }
        let mut trace = Trace::default();
        Ok(sweep(&dg, pts, eps, Some(&mut trace)).map(|acc| reconstruct(&dg, &trace, acc)))
    }

    /// Reachability front after sweeping the whole curve at `eps`.
    pub fn final_front(&self, curve: &PolyLine, eps: f64) -> ReachabilityFront {
        let c = curve.collapsed();
        let pts = c.points();
        let dg = self.local(pts, eps);
        let mut trace = Trace::default();
        sweep(&dg, pts, eps, Some(&mut trace));
        let last = trace.fronts.pop().unwrap_or_default();
        let intervals = last
            .iter()
            .zip(&dg.darts)
            .map(|(lo, d)| {
                let hi = segment_disc_interval(d.a, d.b, pts[pts.len() - 1], eps).map(|iv| iv.hi);
                lo.zip(hi).and_then(|(lo, hi)| FreeInterval::new(lo, hi))
            })
            .collect();
        ReachabilityFront { intervals }
    }

    /// Smallest `eps` (within `tol`) for which the decision holds.
    ///
    /// Starts from the larger endpoint-to-graph distance, grows the step
    /// geometrically until the decision succeeds, then bisects. A constant
    /// path at the nearest graph point always matches for a large enough
    /// `eps`, so the search terminates.
    pub fn distance(&self, curve: &PolyLine, tol: f64) -> Result<f64> {
        if !(tol > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
        }
        let c = curve.collapsed();
        let pts = c.points();
        let start = self.nearest(pts[0]).ok_or(Error::EmptyGraph)?.1;
        let end = self.nearest(pts[pts.len() - 1]).ok_or(Error::EmptyGraph)?.1;
        let mut lo = start.max(end);
        let dg = self.local(pts, lo);
        if self.decide_in(&dg, pts, lo) {
            return Ok(lo);
        }
        let mut step = tol.max(0.25 * lo);
        let (hi, dg) = loop {
            let hi = lo + step;
            let dg = self.local(pts, hi);
            if self.decide_in(&dg, pts, hi) {
                break (hi, dg);
            }
            lo = hi;
            step *= 2.0;
        };
        let mut hi = hi;
        // Bisect to half the tolerance so rounding in the lower bound cannot
        // push the result past it.
        while hi - lo > 0.5 * tol {
            let mid = 0.5 * (lo + hi);
            if self.decide_in(&dg, pts, mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

/// Whether some path in `h` is within Fréchet distance `eps` of `curve`.
/// An empty graph admits no path.
pub fn match_decision(curve: &PolyLine, h: &EmbeddedGraph, eps: f64) -> Result<bool> {
    Matcher::new(h, MatchOptions::default()).decide(curve, eps)
}

/// Fréchet map-matching distance from `curve` into `h`, within `tol`.
pub fn map_match_distance(curve: &PolyLine, h: &EmbeddedGraph, tol: f64) -> Result<f64> {
    Matcher::new(h, MatchOptions::default()).distance(curve, tol)
}

/// [`map_match_distance`] with the default tolerance.
pub fn map_match_distance_default(curve: &PolyLine, h: &EmbeddedGraph) -> Result<f64> {
    map_match_distance(curve, h, DEFAULT_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frechet::frechet_distance;
    use crate::graph::fixtures::{star, straight};
    use crate::graph::{EdgeId, VertexId};

    fn line(c: &[(f64, f64)]) -> PolyLine {
        PolyLine::from_coords(c)
    }

    #[test]
    fn edge_geometry_matches_at_zero() {
        let h = straight(&[(0.0, 0.0), (10.0, 0.0), (10.0, 5.0)], &[(0, 1), (1, 2)]);
        assert!(match_decision(&line(&[(0.0, 0.0), (10.0, 0.0)]), &h, 0.0).unwrap());
        let d = map_match_distance(&line(&[(0.0, 0.0), (10.0, 0.0), (10.0, 5.0)]), &h, 1e-3).unwrap();
        assert!(d <= 1e-3);
    }

    #[test]
    fn offset_segment() {
        let h = straight(&[(0.0, 0.0), (10.0, 0.0)], &[(0, 1)]);
        let c = line(&[(0.0, 1.0), (10.0, 1.0)]);
        assert!(!match_decision(&c, &h, 0.999).unwrap());
        assert!(match_decision(&c, &h, 1.001).unwrap());
        let d = map_match_distance(&c, &h, 1e-6).unwrap();
        assert!((d - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn empty_graph() {
        let h = EmbeddedGraph::new();
        let c = line(&[(0.0, 0.0), (1.0, 0.0)]);
        assert!(!match_decision(&c, &h, 10.0).unwrap());
        assert!(matches!(map_match_distance(&c, &h, 1e-3), Err(Error::EmptyGraph)));
    }

    #[test]
    fn endpoints_may_sit_inside_edges() {
        let h = straight(&[(0.0, 0.0), (10.0, 0.0)], &[(0, 1)]);
        let d = map_match_distance(&line(&[(3.0, 0.5), (6.0, 0.5)]), &h, 1e-6).unwrap();
        assert!((d - 0.5).abs() <= 1e-6);
    }

    #[test]
    fn no_reversal_inside_an_edge() {
        // Curve runs out and back along one long edge; a matched path would
        // have to turn around mid-edge, which is not a path.
        let h = straight(&[(0.0, 0.0), (10.0, 0.0)], &[(0, 1)]);
        let c = line(&[(2.0, 0.0), (6.0, 0.0), (2.0, 0.0)]);
        let d = map_match_distance(&c, &h, 1e-6).unwrap();
        assert!((d - 2.0).abs() <= 1e-6, "{d}");
        // With a vertex at the turning point the u-turn is allowed.
        let h2 = straight(&[(0.0, 0.0), (6.0, 0.0), (10.0, 0.0)], &[(0, 1), (1, 2)]);
        assert!(map_match_distance(&c, &h2, 1e-6).unwrap() <= 1e-6);
    }

    #[test]
    fn u_turn_at_bend_is_not_allowed() {
        let mut h = straight(&[(0.0, 0.0), (10.0, 0.0)], &[]);
        h.add_edge(EdgeId(0), VertexId(0), VertexId(1), &[Point2::new(6.0, 0.0)]).unwrap();
        let c = line(&[(2.0, 0.0), (6.0, 0.0), (2.0, 0.0)]);
        assert!((map_match_distance(&c, &h, 1e-6).unwrap() - 2.0).abs() <= 1e-6);
    }

    #[test]
    fn turns_through_star_centre() {
        let h = star(4, 10.0);
        let c = line(&[(-8.0, 0.3), (0.0, 0.3), (0.3, 8.0)]);
        let d = map_match_distance(&c, &h, 1e-6).unwrap();
        assert!((d - 0.3).abs() <= 1e-6, "{d}");
    }

    #[test]
    fn witness_is_close_to_curve() {
        let h = star(5, 10.0);
        let c = line(&[(7.0, 1.0), (0.5, -0.5), (-2.0, 8.0), (1.0, 2.0)]);
        let m = Matcher::new(&h, MatchOptions::default());
        let d = m.distance(&c, 1e-4).unwrap();
        let w = m.witness(&c, d).unwrap().expect("decision holds at the distance");
        assert!(frechet_distance(&c, &w.path, 1e-4).unwrap() <= d + 2e-4);
        assert!(w.curve_params.windows(2).all(|p| p[0] <= p[1]));
        assert!(m.witness(&c, 0.5 * d).unwrap().is_none());
    }

    #[test]
    fn exhaustive_and_indexed_agree() {
        let h = straight(
            &[(0.0, 0.0), (120.0, 0.0), (120.0, 80.0), (0.0, 80.0), (60.0, 40.0)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)],
        );
        let c = line(&[(5.0, 3.0), (58.0, 45.0), (118.0, 78.0), (119.0, 2.0)]);
        let a = Matcher::new(&h, MatchOptions { cell_size: 10.0, exhaustive: false }).distance(&c, 1e-4).unwrap();
        let b = Matcher::new(&h, MatchOptions { cell_size: 10.0, exhaustive: true }).distance(&c, 1e-4).unwrap();
        assert!((a - b).abs() <= 1e-4);
    }

    #[test]
    fn isolated_vertex_admits_constant_path() {
        let mut h = EmbeddedGraph::new();
        h.add_vertex(VertexId(0), Point2::new(0.0, 0.0)).unwrap();
        let d = map_match_distance(&line(&[(0.0, 1.0), (0.0, 3.0)]), &h, 1e-6).unwrap();
        assert!((d - 3.0).abs() <= 1e-6);
    }

    #[test]
    fn single_point_curve() {
        let h = straight(&[(0.0, 0.0), (10.0, 0.0)], &[(0, 1)]);
        let d = map_match_distance(&line(&[(4.0, 2.5)]), &h, 1e-6).unwrap();
        assert!((d - 2.5).abs() <= 1e-6);
    }

    #[test]
    fn final_front_marks_reached_darts() {
        let h = straight(&[(0.0, 0.0), (10.0, 0.0)], &[(0, 1)]);
        let m = Matcher::new(&h, MatchOptions::default());
        let front = m.final_front(&line(&[(1.0, 0.0), (9.0, 0.0)]), 0.5);
        // Only the forward dart reaches the curve end.
        assert_eq!(front.intervals.iter().filter(|iv| iv.is_some()).count(), 1);
        assert!(m.final_front(&line(&[(1.0, 0.0), (9.0, 3.0)]), 0.5).is_empty());
    }
}

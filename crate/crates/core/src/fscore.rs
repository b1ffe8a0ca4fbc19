//! Marbles-and-holes F-score: sample both graphs around a seed, match
//! samples one-to-one within a distance threshold, score by precision and
//! recall.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::{EmbeddedGraph, GraphLocation, VertexId};
use crate::signature::{SignatureEntry, SignatureMap, SignatureTarget};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FScoreParams {
    pub sampling_interval: f64,
    pub matched_distance: f64,
    pub max_path_length: f64,
}

impl Default for FScoreParams {
    fn default() -> Self {
        Self { sampling_interval: 5.0, matched_distance: 20.0, max_path_length: 300.0 }
    }
}

impl FScoreParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.sampling_interval > 0.0) || !(self.matched_distance >= 0.0) || !(self.max_path_length >= 0.0) {
            return Err(Error::InvalidInput(format!("invalid F-score parameters {self:?}")));
        }
        Ok(())
    }
}

/// Where exploration starts: a vertex or a point inside an edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Seed {
    Vertex(usize),
    OnEdge(GraphLocation),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    pub seed: Point2,
    pub samples: Vec<Point2>,
}

#[derive(Clone, Copy, PartialEq)]
struct Item(f64, usize);
impl Eq for Item {}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        o.0.total_cmp(&self.0).then(o.1.cmp(&self.1))
    }
}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A stretch of geometry with network distances known at both ends.
struct Piece<'a> {
    line: std::borrow::Cow<'a, crate::geometry::PolyLine>,
    da: f64,
    db: f64,
}

fn push_samples(piece: &Piece<'_>, step: f64, max_len: f64, out: &mut Vec<Point2>) {
    let len = piece.line.length();
    let (da, db) = (piece.da, piece.db);
    // Along the piece, network distance is min(da + t, db + len - t); each
    // side owns the stretch up to the peak.
    let peak = if da.is_finite() && db.is_finite() {
        ((db + len - da) / 2.0).clamp(0.0, len)
    } else if da.is_finite() {
        len
    } else {
        0.0
    };
    let mut side = |d0: f64, span: f64, from_a: bool| {
        if !d0.is_finite() || d0 > max_len {
            return;
        }
        let hi = (d0 + span).min(max_len);
        let mut j = (d0 / step - 1e-9).ceil().max(0.0) as u64;
        while (j as f64) * step <= hi + 1e-9 {
            let t = ((j as f64) * step - d0).clamp(0.0, span);
            let s = if from_a { t } else { len - t };
            out.push(piece.line.point_at_arc(s));
            j += 1;
        }
    };
    side(da, peak, true);
    side(db, len - peak, false);
}

fn dedup(points: Vec<Point2>, radius: f64) -> Vec<Point2> {
    let cell = radius.max(1e-9);
    let key = |p: Point2| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
    let mut buckets: HashMap<(i64, i64), Vec<Point2>> = HashMap::new();
    let mut kept = Vec::new();
    for p in points {
        let (cx, cy) = key(p);
        let near = (cx - 1..=cx + 1)
            .flat_map(|x| (cy - 1..=cy + 1).map(move |y| (x, y)))
            .any(|c| buckets.get(&c).is_some_and(|v| v.iter().any(|q| q.dist(p) < radius)));
        if !near {
            buckets.entry((cx, cy)).or_default().push(p);
            kept.push(p);
        }
    }
    kept
}

/// Samples every `sampling_interval` meters of network distance along all
/// walks from the seed, up to `max_path_length`.
pub fn sample_neighborhood(g: &EmbeddedGraph, seed: Seed, params: &FScoreParams) -> Result<SampleSet> {
    params.validate()?;
    let n = g.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    let mut heap = BinaryHeap::new();
    let (seed_point, seed_edge) = match seed {
        Seed::Vertex(v) => {
            if v >= n {
                return Err(Error::InvalidInput(format!("seed vertex index {v} out of range")));
            }
            dist[v] = 0.0;
            heap.push(Item(0.0, v));
            (g.vertex(v).point, None)
        }
        Seed::OnEdge(loc) => {
            let e = g.edge(loc.edge);
            for (v, d) in [(e.a, loc.offset), (e.b, e.length - loc.offset)] {
                if d < dist[v] {
                    dist[v] = d;
                    heap.push(Item(d, v));
                }
            }
            (loc.point, Some(loc))
        }
    };
    while let Some(Item(d, v)) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for &e in g.incident(v) {
            if seed_edge.is_some_and(|s| s.edge == e) {
                continue;
            }
            let w = g.edge(e).other(v);
            let nd = d + g.edge(e).length;
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(Item(nd, w));
            }
        }
    }
    let mut points = vec![seed_point];
    let step = params.sampling_interval;
    for (ei, e) in g.edges().iter().enumerate() {
        match seed_edge {
            Some(loc) if loc.edge == ei => {
                let line = &e.geometry;
                let to_a = Piece { line: std::borrow::Cow::Owned(line.slice_arc(0.0, loc.offset)), da: dist[e.a], db: 0.0 };
                let to_b = Piece { line: std::borrow::Cow::Owned(line.slice_arc(loc.offset, e.length)), da: 0.0, db: dist[e.b] };
                push_samples(&to_a, step, params.max_path_length, &mut points);
                push_samples(&to_b, step, params.max_path_length, &mut points);
            }
            _ => {
                let piece = Piece { line: std::borrow::Cow::Borrowed(&e.geometry), da: dist[e.a], db: dist[e.b] };
                push_samples(&piece, step, params.max_path_length, &mut points);
            }
        }
    }
    Ok(SampleSet { seed: seed_point, samples: dedup(points, step / 2.0) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchCounts {
    pub matched: usize,
    pub unmatched_marbles: usize,
    pub unmatched_holes: usize,
}

/// Maximum-cardinality one-to-one matching of marbles to holes over pairs
/// at most `max_dist` apart (Hopcroft-Karp).
pub fn bottleneck_match(marbles: &[Point2], holes: &[Point2], max_dist: f64) -> MatchCounts {
    let cell = max_dist.max(1e-9);
    let key = |p: Point2| ((p.x / cell).floor() as i64, (p.y / cell).floor() as i64);
    let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, &h) in holes.iter().enumerate() {
        buckets.entry(key(h)).or_default().push(i);
    }
    let adj: Vec<Vec<usize>> = marbles
        .iter()
        .map(|&m| {
            let (cx, cy) = key(m);
            let mut out: Vec<usize> = (cx - 1..=cx + 1)
                .flat_map(|x| (cy - 1..=cy + 1).map(move |y| (x, y)))
                .filter_map(|c| buckets.get(&c))
                .flatten()
                .copied()
                .filter(|&h| holes[h].dist(m) <= max_dist)
                .collect();
            out.sort_unstable();
            out
        })
        .collect();
    let matched = hopcroft_karp(&adj, holes.len());
    MatchCounts { matched, unmatched_marbles: marbles.len() - matched, unmatched_holes: holes.len() - matched }
}

fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> usize {
    const NIL: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_l = vec![NIL; n_left];
    let mut match_r = vec![NIL; n_right];
    let mut layer = vec![0usize; n_left];
    let mut total = 0;
    loop {
        // BFS layering from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_l[u] == NIL {
                layer[u] = 0;
                queue.push_back(u);
            } else {
                layer[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match match_r[v] {
                    NIL => found = true,
                    w if layer[w] == usize::MAX => {
                        layer[w] = layer[u] + 1;
                        queue.push_back(w);
                    }
                    _ => {}
                }
            }
        }
        if !found {
            return total;
        }
        let mut next = vec![0usize; n_left];
        for u in 0..n_left {
            if match_l[u] == NIL && augment(u, adj, &mut match_l, &mut match_r, &mut layer, &mut next) {
                total += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    layer: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[u] < adj[u].len() {
        let v = adj[u][next[u]];
        next[u] += 1;
        let w = match_r[v];
        if w == usize::MAX || (layer[w] == layer[u] + 1 && augment(w, adj, match_l, match_r, layer, next)) {
            match_l[u] = v;
            match_r[v] = u;
            return true;
        }
    }
    layer[u] = usize::MAX;
    false
}

/// Harmonic mean of precision `matched_marbles / total_marbles` and recall
/// `matched_holes / total_holes`; zero when both are zero.
pub fn f_score(matched_marbles: usize, total_marbles: usize, matched_holes: usize, total_holes: usize) -> Result<f64> {
    if matched_marbles > total_marbles || matched_holes > total_holes {
        return Err(Error::InvalidInput("matched count exceeds total".into()));
    }
    let ratio = |m: usize, t: usize| if t == 0 { 0.0 } else { m as f64 / t as f64 };
    let (p, r) = (ratio(matched_marbles, total_marbles), ratio(matched_holes, total_holes));
    Ok(if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeedScore {
    pub vertex: VertexId,
    pub marbles: usize,
    pub holes: usize,
    pub matched: usize,
    pub f_score: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FScoreReport {
    pub params: FScoreParams,
    pub per_seed: Vec<SeedScore>,
    /// F-score of the summed counts over all seeds.
    pub global: f64,
    /// Mean of the two endpoint scores for every edge of the source graph.
    pub edges: SignatureMap,
}

/// Scores one seed vertex of `g` against `h`, seeding `h` at its closest point.
pub fn seed_score(g: &EmbeddedGraph, h: &EmbeddedGraph, v: usize, params: &FScoreParams) -> Result<SeedScore> {
    let marbles = sample_neighborhood(g, Seed::Vertex(v), params)?;
    let vertex = g.vertex(v).id;
    let Some((loc, _)) = h.closest_location(g.vertex(v).point) else {
        return Ok(SeedScore { vertex, marbles: marbles.samples.len(), holes: 0, matched: 0, f_score: 0.0 });
    };
    let holes = sample_neighborhood(h, Seed::OnEdge(loc), params)?;
    let m = bottleneck_match(&marbles.samples, &holes.samples, params.matched_distance);
    Ok(SeedScore {
        vertex,
        marbles: marbles.samples.len(),
        holes: holes.samples.len(),
        matched: m.matched,
        f_score: f_score(m.matched, marbles.samples.len(), m.matched, holes.samples.len())?,
    })
}

/// Per-seed scores for every vertex of `g`, the global score, and the edge
/// signature built from endpoint averages.
pub fn fscore_signature(g: &EmbeddedGraph, h: &EmbeddedGraph, params: &FScoreParams, workers: usize) -> Result<FScoreReport> {
    params.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidInput(format!("cannot start workers: {e}")))?;
    let per_seed: Vec<SeedScore> =
        pool.install(|| (0..g.vertex_count()).into_par_iter().map(|v| seed_score(g, h, v, params)).collect::<Result<_>>())?;
    let (mut m, mut tm, mut th) = (0, 0, 0);
    for s in &per_seed {
        m += s.matched;
        tm += s.marbles;
        th += s.holes;
    }
    let global = f_score(m, tm, m, th)?;
    let entries = g
        .edges()
        .iter()
        .map(|e| SignatureEntry {
            id: e.id.0,
            length: e.length,
            value: 0.5 * (per_seed[e.a].f_score + per_seed[e.b].f_score),
        })
        .collect();
    Ok(FScoreReport { params: *params, per_seed, global, edges: SignatureMap::new(SignatureTarget::Edge, 0, entries) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::straight;

    fn p(interval: f64, max_path: f64) -> FScoreParams {
        FScoreParams { sampling_interval: interval, matched_distance: 2.0, max_path_length: max_path }
    }

    fn tee() -> EmbeddedGraph {
        straight(&[(-10.0, 0.0), (0.0, 0.0), (10.0, 0.0), (0.0, 10.0)], &[(0, 1), (1, 2), (1, 3)])
    }

    #[test]
    fn single_edge_samples() {
        let g = straight(&[(0.0, 0.0), (10.0, 0.0)], &[(0, 1)]);
        assert_eq!(sample_neighborhood(&g, Seed::Vertex(0), &p(5.0, 300.0)).unwrap().samples.len(), 3);
        assert_eq!(sample_neighborhood(&g, Seed::Vertex(0), &p(5.0, 0.0)).unwrap().samples.len(), 1);
    }

    #[test]
    fn t_junction_by_hand() {
        // From the west leaf: (-10,0) (-5,0) (0,0) (5,0) (10,0) (0,5) (0,10).
        let g = tee();
        assert_eq!(sample_neighborhood(&g, Seed::Vertex(0), &p(5.0, 300.0)).unwrap().samples.len(), 7);
        assert_eq!(sample_neighborhood(&g, Seed::Vertex(0), &p(5.0, 15.0)).unwrap().samples.len(), 5);
    }

    #[test]
    fn mid_edge_seed_walks_both_ways() {
        let g = tee();
        let (loc, _) = g.closest_location(Point2::new(-5.0, 1.0)).unwrap();
        let s = sample_neighborhood(&g, Seed::OnEdge(loc), &p(5.0, 5.0)).unwrap();
        assert_eq!(s.samples.len(), 3);
    }

    /// Exhaustive maximum matching by trying every assignment.
    fn brute(adj: &[Vec<usize>], used: &mut Vec<bool>, i: usize) -> usize {
        if i == adj.len() {
            return 0;
        }
        let mut best = brute(adj, used, i + 1);
        for &h in &adj[i] {
            if !used[h] {
                used[h] = true;
                best = best.max(1 + brute(adj, used, i + 1));
                used[h] = false;
            }
        }
        best
    }

    #[test]
    fn matching_small_cases() {
        let pts = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(2.0, 0.0)];
        assert_eq!(bottleneck_match(&pts, &pts, 0.0).matched, 3);
        assert_eq!(bottleneck_match(&pts, &[Point2::new(100.0, 0.0)], 5.0).matched, 0);
        assert_eq!(bottleneck_match(&pts, &pts[..2], 10.0), MatchCounts { matched: 2, unmatched_marbles: 1, unmatched_holes: 0 });
        // Greedy nearest-first would match marble 0 to hole 0 and strand marble 1.
        let marbles = [Point2::new(0.0, 0.0), Point2::new(-1.5, 0.0)];
        let holes = [Point2::new(-0.5, 0.0), Point2::new(1.0, 0.0)];
        assert_eq!(bottleneck_match(&marbles, &holes, 1.0).matched, 2);
        let adj = vec![vec![0], vec![0, 1]];
        assert_eq!(brute(&adj, &mut vec![false; 2], 0), 2);
    }

    #[test]
    fn score_arithmetic() {
        assert_eq!(f_score(4, 4, 4, 4).unwrap(), 1.0);
        assert_eq!(f_score(0, 4, 0, 4).unwrap(), 0.0);
        assert_eq!(f_score(1, 2, 1, 2).unwrap(), 0.5);
        assert_eq!(f_score(0, 0, 0, 0).unwrap(), 0.0);
        assert!(f_score(3, 2, 0, 0).is_err());
    }

    #[test]
    fn identity_and_empty() {
        let g = tee();
        let r = fscore_signature(&g, &g, &p(1.0, 15.0), 2).unwrap();
        assert_eq!(r.global, 1.0);
        assert!(r.edges.entries().iter().all(|e| e.value == 1.0));
        let r = fscore_signature(&g, &EmbeddedGraph::new(), &p(1.0, 15.0), 1).unwrap();
        assert_eq!(r.global, 0.0);
        assert!(r.edges.entries().iter().all(|e| e.value == 0.0));
    }

    #[test]
    fn missing_street_lowers_nearby_scores() {
        // Ladder with six rungs and rails; h drops the rightmost rung.
        let verts = [(0.0, 0.0), (20.0, 0.0), (40.0, 0.0), (0.0, 20.0), (20.0, 20.0), (40.0, 20.0)];
        let g = straight(&verts, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)]);
        let h = straight(&verts, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4)]);
        let params = FScoreParams { sampling_interval: 5.0, matched_distance: 2.0, max_path_length: 10.0 };
        let r = fscore_signature(&g, &h, &params, 1).unwrap();
        // Seed at vertex 2: marbles on (1,2) at 0,5,10 and on (2,5) at 5,10;
        // holes on (1,2) only. 3 matched of 5 marbles and 3 holes.
        let s2 = r.per_seed[2];
        assert_eq!((s2.marbles, s2.holes, s2.matched), (5, 3, 3));
        assert!((s2.f_score - f_score(3, 5, 3, 3).unwrap()).abs() < 1e-12);
        assert!(r.edges.value(6).unwrap() < 1.0);
        assert_eq!(r.edges.value(4).unwrap(), 1.0);
        assert!(r.global < 1.0);
    }
}

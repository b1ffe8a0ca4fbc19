#![allow(dead_code)]

use pathdist::frechet::frechet_decision;
use pathdist::geometry::{Point2, PolyLine};
use pathdist::graph::{EdgeId, EmbeddedGraph, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn has_edge(edges: &[(usize, usize)], a: usize, b: usize) -> bool {
    edges.iter().any(|&(u, v)| (u, v) == (a, b) || (u, v) == (b, a))
}

/// Connected graph of straight edges: a random tree plus `extra` chords,
/// vertices uniform in `[0, size]²`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize, size: f64) -> EmbeddedGraph {
    let pts: Vec<Point2> = (0..n).map(|_| Point2::new(rng.gen_range(0.0..size), rng.gen_range(0.0..size))).collect();
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b && !has_edge(&edges, a, b) {
            edges.push((a, b));
        }
    }
    build(&pts, &edges)
}

pub fn build(pts: &[Point2], edges: &[(usize, usize)]) -> EmbeddedGraph {
    let mut g = EmbeddedGraph::new();
    for (i, p) in pts.iter().enumerate() {
        g.add_vertex(VertexId(i as u64), *p).unwrap();
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        g.add_edge(EdgeId(i as u64), VertexId(a as u64), VertexId(b as u64), &[]).unwrap();
    }
    g
}

/// Copy of `g` with vertices jittered by up to `noise`, one edge dropped
/// and one chord added.
pub fn variant(rng: &mut ChaCha8Rng, g: &EmbeddedGraph, noise: f64) -> EmbeddedGraph {
    let pts: Vec<Point2> = g
        .vertices()
        .iter()
        .map(|v| Point2::new(v.point.x + rng.gen_range(-noise..=noise), v.point.y + rng.gen_range(-noise..=noise)))
        .collect();
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.a, e.b)).collect();
    if edges.len() > 1 {
        edges.remove(rng.gen_range(0..edges.len()));
    }
    let n = pts.len();
    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
    if a != b && !has_edge(&edges, a, b) {
        edges.push((a, b));
    }
    build(&pts, &edges)
}

/// Noisy polyline following a random walk of `hops` edges in `h`, starting
/// and ending inside edges.
pub fn curve_near(rng: &mut ChaCha8Rng, h: &EmbeddedGraph, hops: usize, noise: f64) -> PolyLine {
    let mut e = rng.gen_range(0..h.edge_count());
    let mut v = if rng.gen_bool(0.5) { h.edge(e).a } else { h.edge(e).b };
    let start = h.edge(e).geometry.point_at_arc(rng.gen_range(0.0..h.edge(e).length));
    let mut pts = vec![start, h.vertex(v).point];
    for _ in 0..hops {
        let inc = h.incident(v);
        e = inc[rng.gen_range(0..inc.len())];
        v = h.edge(e).other(v);
        pts.push(h.vertex(v).point);
    }
    let next = h.incident(v)[rng.gen_range(0..h.incident(v).len())];
    let geo = h.oriented_geometry(next, v);
    pts.push(geo.point_at_arc(rng.gen_range(0.0..geo.length())));
    let pts = pts
        .into_iter()
        .map(|p| Point2::new(p.x + rng.gen_range(-noise..=noise), p.y + rng.gen_range(-noise..=noise)))
        .collect();
    PolyLine::new(pts).unwrap()
}

/// Points every `s` along edge `e` from endpoint `a` (inclusive of both ends).
fn samples(h: &EmbeddedGraph, e: usize, s: f64) -> Vec<f64> {
    let len = h.edge(e).length;
    let n = (len / s).ceil().max(1.0) as usize;
    (0..=n).map(|i| len * i as f64 / n as f64).collect()
}

fn dist_to_curve(p: Point2, c: &PolyLine) -> f64 {
    pathdist::geometry::point_to_polyline_distance(p, c)
}

/// Brute force: is some path of `h` within Fréchet distance `eps` of
/// `curve`? Candidate paths start and end at points spaced at most `s`
/// apart along edges and pass through at most `max_links` whole edges.
pub fn brute_match_decision(curve: &PolyLine, h: &EmbeddedGraph, eps: f64, s: f64, max_links: usize) -> bool {
    let (c0, c1) = (curve.first(), curve.last());
    let near: Vec<bool> = h.vertices().iter().map(|v| dist_to_curve(v.point, curve) <= eps).collect();
    // (edge, arc offset) candidates for each end.
    let ends = |c: Point2| -> Vec<(usize, f64)> {
        let mut out = Vec::new();
        for e in 0..h.edge_count() {
            let geo = &h.edge(e).geometry;
            for t in samples(h, e, s) {
                if geo.point_at_arc(t).dist(c) <= eps {
                    out.push((e, t));
                }
            }
        }
        out
    };
    let starts = ends(c0);
    let finishes = ends(c1);
    if starts.is_empty() || finishes.is_empty() {
        return false;
    }
    // Paths inside a single edge.
    for &(e, ta) in &starts {
        for &(f, tb) in &finishes {
            if e == f {
                let geo = &h.edge(e).geometry;
                let piece = if ta <= tb { geo.slice_arc(ta, tb) } else { geo.slice_arc(tb, ta).reversed() };
                if frechet_decision(curve, &piece, eps).unwrap() {
                    return true;
                }
            }
        }
    }
    // Start piece to vertex u, walk of whole edges to w, end piece from w.
    let mut stack: Vec<(usize, Vec<usize>, PolyLine)> = Vec::new();
    for u in 0..h.vertex_count() {
        if near[u] {
            stack.push((u, Vec::new(), PolyLine::new(vec![h.vertex(u).point]).unwrap()));
        }
    }
    let mut body: Vec<(usize, usize, PolyLine)> = Vec::new();
    while let Some((w, path, geo)) = stack.pop() {
        let u = if path.is_empty() { w } else { path_start(h, &path, w) };
        body.push((u, w, geo.clone()));
        if path.len() == max_links {
            continue;
        }
        for &e in h.incident(w) {
            let x = h.edge(e).other(w);
            if !near[x] {
                continue;
            }
            let mut g2 = geo.clone();
            g2.extend_with(&h.oriented_geometry(e, w));
            let mut p2 = path.clone();
            p2.push(e);
            stack.push((x, p2, g2));
        }
    }
    for &(e, ta) in &starts {
        let edge = h.edge(e);
        for (u, w, mid) in &body {
            let head = if *u == edge.b {
                edge.geometry.slice_arc(ta, edge.length)
            } else if *u == edge.a {
                edge.geometry.slice_arc(0.0, ta).reversed()
            } else {
                continue;
            };
            for &(f, tb) in &finishes {
                let fe = h.edge(f);
                let tail = if *w == fe.a {
                    fe.geometry.slice_arc(0.0, tb)
                } else if *w == fe.b {
                    fe.geometry.slice_arc(tb, fe.length).reversed()
                } else {
                    continue;
                };
                let mut full = head.clone();
                full.extend_with(mid);
                full.extend_with(&tail);
                if frechet_decision(curve, &full, eps).unwrap() {
                    return true;
                }
            }
        }
    }
    false
}

/// First vertex of a walk given as edges ending at `end`.
fn path_start(h: &EmbeddedGraph, edges: &[usize], end: usize) -> usize {
    let mut v = end;
    for &e in edges.iter().rev() {
        v = h.edge(e).other(v);
    }
    v
}

/// Spearman rank correlation (no ties expected).
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    let rank = |v: &[f64]| {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut r = vec![0.0; v.len()];
        for (pos, &i) in idx.iter().enumerate() {
            r[i] = pos as f64;
        }
        r
    };
    let (rx, ry) = (rank(x), rank(y));
    let n = x.len() as f64;
    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b).powi(2)).sum();
    1.0 - 6.0 * d2 / (n * (n * n - 1.0))
}

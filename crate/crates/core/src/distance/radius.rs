use crate::geometry::{Point2, PolyLine};
use crate::graph::EmbeddedGraph;

pub const DEFAULT_RADIUS_STEPS: usize = 256;

/// First point where `line`, walked from its start at `center`, reaches
/// distance `r` from `center`.
fn first_crossing(line: &PolyLine, center: Point2, r: f64) -> Option<Point2> {
    for w in line.points().windows(2) {
        let (a, b) = (w[0], w[1]);
        let d = b - a;
        let f = a - center;
        let qa = d.dot(d);
        if qa == 0.0 {
            continue;
        }
        let qb = 2.0 * f.dot(d);
        let qc = f.dot(f) - r * r;
        if qc >= 0.0 {
            // Already on or outside the circle at the segment start.
            return Some(a);
        }
        let disc = qb * qb - 4.0 * qa * qc;
        let t = (-qb + disc.max(0.0).sqrt()) / (2.0 * qa);
        if t <= 1.0 {
            return Some(a.lerp(b, t.max(0.0)));
        }
    }
    None
}

fn reach(line: &PolyLine, center: Point2) -> f64 {
    line.points().iter().map(|p| p.dist(center)).fold(0.0, f64::max)
}

fn incident_lines(g: &EmbeddedGraph, v: usize) -> Vec<PolyLine> {
    g.incident(v).iter().map(|&e| g.oriented_geometry(e, v).collapsed()).collect()
}

fn feasible(lines: &[PolyLine], center: Point2, r: f64, d: f64) -> bool {
    let mut pts = Vec::with_capacity(lines.len());
    for l in lines {
        match first_crossing(l, center, r) {
            Some(p) => pts.push(p),
            None => return false,
        }
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            if pts[i].dist(pts[j]) <= 2.0 * d {
                return false;
            }
        }
    }
    true
}

/// Smallest angle between the initial directions of two incident edges.
/// `None` for vertices of degree below two.
pub fn min_incident_angle(g: &EmbeddedGraph, v: usize) -> Option<f64> {
    let dirs: Vec<Point2> = incident_lines(g, v)
        .iter()
        .filter_map(|l| l.points().get(1).map(|&p| p - l.first()))
        .collect();
    let mut best: Option<f64> = None;
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            let ang = dirs[i].cross(dirs[j]).abs().atan2(dirs[i].dot(dirs[j]));
            best = Some(best.map_or(ang, |b| b.min(ang)));
        }
    }
    best
}

fn low_degree(g: &EmbeddedGraph, v: usize, d: f64) -> Option<f64> {
    match g.degree(v) {
        0 => Some(f64::INFINITY),
        1 => {
            let line = &incident_lines(g, v)[0];
            Some(if reach(line, g.vertex(v).point) >= d { d } else { f64::INFINITY })
        }
        _ => None,
    }
}

/// `d / sin(θ/2)` for a vertex whose incident edges are all straight.
/// Returns `None` if some incident edge is not a straight segment.
pub fn intersection_radius_closed_form(g: &EmbeddedGraph, v: usize, d: f64) -> Option<f64> {
    let lines = incident_lines(g, v);
    if lines.iter().any(|l| l.len() > 2) {
        return None;
    }
    if let Some(r) = low_degree(g, v, d) {
        return Some(r);
    }
    let theta = min_incident_angle(g, v)?;
    if d == 0.0 {
        return Some(if theta > 0.0 { 0.0 } else { f64::INFINITY });
    }
    let half = (theta / 2.0).sin();
    if half <= 0.0 {
        return Some(f64::INFINITY);
    }
    let r = d / half;
    let shortest = lines.iter().map(PolyLine::length).fold(f64::INFINITY, f64::min);
    Some(if r <= shortest { r } else { f64::INFINITY })
}

/// Scans `[d, r_max]` in `steps` increments for the first feasible radius,
/// then bisects between the last infeasible and first feasible sample.
pub fn intersection_radius_numeric(g: &EmbeddedGraph, v: usize, d: f64, steps: usize) -> f64 {
    if let Some(r) = low_degree(g, v, d) {
        return r;
    }
    let center = g.vertex(v).point;
    let lines = incident_lines(g, v);
    let r_max = lines.iter().map(|l| reach(l, center)).fold(f64::INFINITY, f64::min);
    if r_max < d {
        return f64::INFINITY;
    }
    let steps = steps.max(1);
    let at = |i: usize| d + (r_max - d) * i as f64 / steps as f64;
    let Some(first) = (0..=steps).find(|&i| feasible(&lines, center, at(i), d)) else {
        return f64::INFINITY;
    };
    if first == 0 {
        return d;
    }
    let (mut lo, mut hi) = (at(first - 1), at(first));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(&lines, center, mid, d) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// r_d(v); closed form when every incident edge is straight.
pub fn intersection_radius(g: &EmbeddedGraph, v: usize, d: f64, steps: usize) -> f64 {
    intersection_radius_closed_form(g, v, d).unwrap_or_else(|| intersection_radius_numeric(g, v, d, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{star, straight};
    use crate::graph::{EdgeId, VertexId};

    #[test]
    fn perpendicular_cross() {
        let g = star(4, 10.0);
        let r = intersection_radius(&g, 0, 1.0, DEFAULT_RADIUS_STEPS);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        let n = intersection_radius_numeric(&g, 0, 1.0, DEFAULT_RADIUS_STEPS);
        assert!((n - 2f64.sqrt()).abs() < 1e-9, "{n}");
    }

    #[test]
    fn short_edges_are_not_separated() {
        let g = star(4, 1.2);
        assert!(intersection_radius(&g, 0, 1.0, 64).is_infinite());
        assert!(intersection_radius_numeric(&g, 0, 1.0, 64).is_infinite());
        // Leaves: d above the edge length.
        assert!(intersection_radius(&g, 1, 2.0, 64).is_infinite());
        assert_eq!(intersection_radius(&g, 1, 1.0, 64), 1.0);
    }

    #[test]
    fn isolated_and_collinear() {
        let mut g = straight(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (5.0, 5.0)], &[(0, 1), (0, 2)]);
        assert!(intersection_radius(&g, 3, 0.1, 16).is_infinite());
        assert!(intersection_radius(&g, 0, 0.1, 16).is_infinite());
        g.add_edge(EdgeId(9), VertexId(0), VertexId(3), &[]).unwrap();
        assert!(min_incident_angle(&g, 0).unwrap() < 1e-12);
    }

    /// Dense scan at ten times the resolution, no refinement.
    fn dense_oracle(g: &EmbeddedGraph, v: usize, d: f64, steps: usize) -> f64 {
        let center = g.vertex(v).point;
        let lines = incident_lines(g, v);
        let r_max = lines.iter().map(|l| reach(l, center)).fold(f64::INFINITY, f64::min);
        (0..=steps)
            .map(|i| d + (r_max - d) * i as f64 / steps as f64)
            .find(|&r| feasible(&lines, center, r, d))
            .unwrap_or(f64::INFINITY)
    }

    #[test]
    fn bent_edges_match_dense_scan() {
        let mut g = straight(&[(0.0, 0.0), (6.0, 0.0), (0.0, 6.0), (-6.0, -1.0)], &[]);
        g.add_edge(EdgeId(0), VertexId(0), VertexId(1), &[Point2::new(1.0, 0.3), Point2::new(3.0, -1.0)]).unwrap();
        g.add_edge(EdgeId(1), VertexId(0), VertexId(2), &[Point2::new(0.8, 1.0), Point2::new(0.0, 3.0)]).unwrap();
        g.add_edge(EdgeId(2), VertexId(0), VertexId(3), &[Point2::new(-1.0, 0.2)]).unwrap();
        let d = 0.7;
        let steps = 64;
        let got = intersection_radius(&g, 0, d, steps);
        let dense = dense_oracle(&g, 0, d, 10 * steps);
        let r_max = 6.0;
        assert!(got.is_finite());
        assert!(got <= dense + 1e-12 && dense - got <= (r_max - d) / (10 * steps) as f64 + 1e-9, "{got} vs {dense}");
    }
}

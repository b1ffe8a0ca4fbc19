//! Fréchet distance between polylines.
//!
//! The decision procedure propagates reachable intervals through the
//! free-space diagram cell by cell. Each cell's free space is the
//! intersection of an ellipse with the unit square and therefore convex, so
//! the reachable part of every cell boundary is one interval. The distance
//! itself is found by bisection on the decision to an absolute tolerance.

use crate::error::{Error, Result};
use crate::geometry::{segment_disc_interval, FreeInterval, Point2, PolyLine};

/// Default absolute tolerance (meters) for all bisection searches.
pub const DEFAULT_TOLERANCE: f64 = 1e-3;

fn check_eps(eps: f64) -> Result<()> {
    if eps.is_nan() || eps < 0.0 {
        return Err(Error::InvalidInput(format!("eps must be a non-negative number, got {eps}")));
    }
    Ok(())
}

/// Whether the Fréchet distance between `f` and `g` is at most `eps`.
pub fn frechet_decision(f: &PolyLine, g: &PolyLine, eps: f64) -> Result<bool> {
    check_eps(eps)?;
    Ok(decide(f.collapsed().points(), g.collapsed().points(), eps))
}

fn decide(p: &[Point2], q: &[Point2], eps: f64) -> bool {
    if p[0].dist(q[0]) > eps || p[p.len() - 1].dist(q[q.len() - 1]) > eps {
        return false;
    }
    if p.len() == 1 || q.len() == 1 {
        // A point against a curve: every point of the curve must be in range,
        // and the farthest point of a polyline from a fixed point is a vertex.
        let (pt, curve) = if p.len() == 1 { (p[0], q) } else { (q[0], p) };
        return curve.iter().all(|c| c.dist(pt) <= eps);
    }
    let n = p.len() - 1;
    let m = q.len() - 1;

    // `left[j]`: reachable part of the boundary at p_i over q-segment j.
    // `bottom`: reachable part of the boundary at q_j over p-segment i,
    // swept column by column.
    let mut left: Vec<Option<FreeInterval>> = vec![None; m];
    let mut open = true;
    for j in 0..m {
        let free = segment_disc_interval(q[j], q[j + 1], p[0], eps);
        left[j] = match free {
            Some(iv) if open && iv.lo == 0.0 => Some(iv),
            _ => None,
        };
        open = matches!(left[j], Some(iv) if iv.hi == 1.0);
    }

    let mut bottom_open = true;
    for i in 0..n {
        let bottom_free = segment_disc_interval(p[i], p[i + 1], q[0], eps);
        let mut bottom = match bottom_free {
            Some(iv) if bottom_open && iv.lo == 0.0 => Some(iv),
            _ => None,
        };
        bottom_open = matches!(bottom, Some(iv) if iv.hi == 1.0);

        for j in 0..m {
            let right_free = segment_disc_interval(q[j], q[j + 1], p[i + 1], eps);
            let top_free = segment_disc_interval(p[i], p[i + 1], q[j + 1], eps);
            let l = left[j];
            let right = match right_free {
                Some(rf) if bottom.is_some() => Some(rf),
                Some(rf) => l.and_then(|l| FreeInterval::new(l.lo.max(rf.lo), rf.hi)),
                None => None,
            };
            let top = match top_free {
                Some(tf) if l.is_some() => Some(tf),
                Some(tf) => bottom.and_then(|b| FreeInterval::new(b.lo.max(tf.lo), tf.hi)),
                None => None,
            };
            left[j] = right;
            bottom = top;
        }
        if i == n - 1 {
            return matches!(bottom, Some(iv) if iv.hi == 1.0) || matches!(left[m - 1], Some(iv) if iv.hi == 1.0);
        }
    }
    unreachable!("loop returns on the last column")
}

/// Fréchet distance within absolute tolerance `tol`.
///
/// Bisects between `max(|f(0) - g(0)|, |f(1) - g(1)|)` and the largest
/// vertex-to-vertex distance; the returned value is never below the true
/// distance by more than `tol` and never above it by more than `tol`.
pub fn frechet_distance(f: &PolyLine, g: &PolyLine, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be positive, got {tol}")));
    }
    let p = f.collapsed();
    let q = g.collapsed();
    let (p, q) = (p.points(), q.points());
    let mut lo = p[0].dist(q[0]).max(p[p.len() - 1].dist(q[q.len() - 1]));
    if decide(p, q, lo) {
        return Ok(lo);
    }
    let mut hi = p
        .iter()
        .flat_map(|a| q.iter().map(move |b| a.dist(*b)))
        .fold(lo, f64::max);
    // Rounding can leave the decision false right at the vertex bound.
    while !decide(p, q, hi) {
        lo = hi;
        hi = hi * 2.0 + tol;
    }
    // Bisect to half the tolerance so rounding in the lower bound cannot
    // push the result past it.
    while hi - lo > 0.5 * tol {
        let mid = 0.5 * (lo + hi);
        if decide(p, q, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Discrete Fréchet distance over the vertex sequences (coupling distance).
pub fn discrete_frechet(f: &PolyLine, g: &PolyLine) -> f64 {
    let p = f.points();
    let q = g.points();
    let mut prev = vec![0.0f64; q.len()];
    let mut cur = vec![0.0f64; q.len()];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            let d = a.dist(*b);
            cur[j] = match (i, j) {
                (0, 0) => d,
                (0, _) => cur[j - 1].max(d),
                (_, 0) => prev[0].max(d),
                _ => prev[j].min(prev[j - 1]).min(cur[j - 1]).max(d),
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[q.len() - 1]
}

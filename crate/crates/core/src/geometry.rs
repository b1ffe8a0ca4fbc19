//! Planar primitives: points, polylines and the segment/disc helpers used by
//! the free-space computations.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point in a planar metric frame (meters, e.g. UTM offsets).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Self) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Self) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Self) -> f64 {
        (self - other).norm()
    }

    pub fn lerp(self, other: Self, t: f64) -> Self {
        Self::new(self.x + (other.x - self.x) * t, self.y + (other.y - self.y) * t)
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl From<(f64, f64)> for Point2 {
    fn from((x, y): (f64, f64)) -> Self {
        Self::new(x, y)
    }
}

/// Closed sub-interval of the unit parameter range of a segment.
///
/// Emptiness is expressed as `Option<FreeInterval>` by the functions that
/// produce these, so a value of this type always satisfies `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeInterval {
    pub lo: f64,
    pub hi: f64,
}

impl FreeInterval {
    pub fn new(lo: f64, hi: f64) -> Option<Self> {
        (lo <= hi).then_some(Self { lo, hi })
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }
}

/// Parameters `t` in `[0, 1]` with `|a + t (b - a) - center| <= radius`.
///
/// The set is convex, so it is a single closed interval or empty.
pub fn segment_disc_interval(a: Point2, b: Point2, center: Point2, radius: f64) -> Option<FreeInterval> {
    let d = b - a;
    let len_sq = d.norm_sq();
    let r_sq = radius * radius;
    if len_sq == 0.0 {
        return ((a - center).norm_sq() <= r_sq).then_some(FreeInterval { lo: 0.0, hi: 1.0 });
    }
    // Project the center onto the supporting line, then offset by the chord half-width.
    let t_mid = (center - a).dot(d) / len_sq;
    let foot = a + d * t_mid;
    let h_sq = (center - foot).norm_sq();
    if h_sq > r_sq {
        return None;
    }
    let half = ((r_sq - h_sq) / len_sq).sqrt();
    let lo = (t_mid - half).max(0.0);
    let hi = (t_mid + half).min(1.0);
    FreeInterval::new(lo, hi)
}

/// Euclidean distance from `p` to the closed segment `a`-`b`, with the
/// parameter of the closest point.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> (f64, f64) {
    let d = b - a;
    let len_sq = d.norm_sq();
    if len_sq == 0.0 {
        return (p.dist(a), 0.0);
    }
    let t = ((p - a).dot(d) / len_sq).clamp(0.0, 1.0);
    (p.dist(a + d * t), t)
}

/// Whether closed segments `p1`-`p2` and `q1`-`q2` share a point.
pub fn segments_intersect(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
        (b - a).cross(c - a)
    }
    fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
        p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
    }
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BBox {
    pub min: Point2,
    pub max: Point2,
}

impl BBox {
    pub fn of_points<'a>(points: impl IntoIterator<Item = &'a Point2>) -> Option<Self> {
        let mut it = points.into_iter();
        let first = *it.next()?;
        let mut bb = Self { min: first, max: first };
        for p in it {
            bb.min.x = bb.min.x.min(p.x);
            bb.min.y = bb.min.y.min(p.y);
            bb.max.x = bb.max.x.max(p.x);
            bb.max.y = bb.max.y.max(p.y);
        }
        Some(bb)
    }

    pub fn union(self, other: Self) -> Self {
        Self {
            min: Point2::new(self.min.x.min(other.min.x), self.min.y.min(other.min.y)),
            max: Point2::new(self.max.x.max(other.max.x), self.max.y.max(other.max.y)),
        }
    }

    pub fn expand(self, by: f64) -> Self {
        Self {
            min: Point2::new(self.min.x - by, self.min.y - by),
            max: Point2::new(self.max.x + by, self.max.y + by),
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }
}

/// An ordered, non-empty sequence of points.
///
/// A single point is a valid (degenerate) curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyLine {
    points: Vec<Point2>,
}

impl PolyLine {
    pub fn new(points: Vec<Point2>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput("polyline needs at least one point".into()));
        }
        if let Some(p) = points.iter().find(|p| !p.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite coordinate ({}, {})", p.x, p.y)));
        }
        Ok(Self { points })
    }

    /// Builds a polyline from `(x, y)` pairs.
    ///
    /// # Panics
    /// On an empty or non-finite input; meant for fixtures and literals.
    pub fn from_coords(coords: &[(f64, f64)]) -> Self {
        Self::new(coords.iter().map(|&c| c.into()).collect()).expect("valid polyline literal")
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn segment_count(&self) -> usize {
        self.points.len() - 1
    }

    pub fn first(&self) -> Point2 {
        self.points[0]
    }

    pub fn last(&self) -> Point2 {
        self.points[self.points.len() - 1]
    }

    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| w[0].dist(w[1])).sum()
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self { points }
    }

    /// Drops consecutive duplicate points; keeps at least one point.
    pub fn collapsed(&self) -> Self {
        let mut points: Vec<Point2> = Vec::with_capacity(self.points.len());
        for &p in &self.points {
            if points.last() != Some(&p) {
                points.push(p);
            }
        }
        Self { points }
    }

    pub fn bbox(&self) -> BBox {
        BBox::of_points(&self.points).expect("non-empty polyline")
    }

    /// Point at arc length `s` from the start, clamped to the curve.
    pub fn point_at_arc(&self, s: f64) -> Point2 {
        let mut remaining = s.max(0.0);
        for w in self.points.windows(2) {
            let len = w[0].dist(w[1]);
            if remaining <= len {
                return if len == 0.0 { w[0] } else { w[0].lerp(w[1], remaining / len) };
            }
            remaining -= len;
        }
        self.last()
    }

    /// Sub-curve between arc lengths `from` and `to` (`from <= to`).
    pub fn slice_arc(&self, from: f64, to: f64) -> Self {
        let mut points = vec![self.point_at_arc(from)];
        let mut acc = 0.0;
        for w in self.points.windows(2) {
            acc += w[0].dist(w[1]);
            if acc > from && acc < to {
                points.push(w[1]);
            }
        }
        points.push(self.point_at_arc(to));
        Self { points }.collapsed()
    }

    /// Appends `other`, skipping its first point when it repeats our last.
    pub fn extend_with(&mut self, other: &PolyLine) {
        let skip = usize::from(self.last() == other.first());
        self.points.extend_from_slice(&other.points[skip..]);
    }

    /// Inserts evenly spaced points so no segment is longer than `spacing`.
    /// Original vertices are kept.
    pub fn resampled(&self, spacing: f64) -> Self {
        assert!(spacing > 0.0, "resampling spacing must be positive");
        let mut points = vec![self.points[0]];
        for w in self.points.windows(2) {
            let len = w[0].dist(w[1]);
            let pieces = (len / spacing).ceil().max(1.0) as usize;
            for i in 1..=pieces {
                points.push(w[0].lerp(w[1], i as f64 / pieces as f64));
            }
        }
        Self { points }
    }
}

/// Minimum Euclidean distance from `p` to any point of `line`.
pub fn point_to_polyline_distance(p: Point2, line: &PolyLine) -> f64 {
    let pts = line.points();
    if pts.len() == 1 {
        return p.dist(pts[0]);
    }
    pts.windows(2)
        .map(|w| point_segment_distance(p, w[0], w[1]).0)
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_on_line_has_zero_distance() {
        let line = PolyLine::from_coords(&[(0.0, 0.0), (4.0, 0.0)]);
        assert_eq!(point_to_polyline_distance(Point2::new(1.5, 0.0), &line), 0.0);
    }

    #[test]
    fn point_above_segment() {
        let line = PolyLine::from_coords(&[(-1.0, 0.0), (1.0, 0.0)]);
        assert_eq!(point_to_polyline_distance(Point2::new(0.0, 1.0), &line), 1.0);
    }

    #[test]
    fn point_beyond_endpoint() {
        let line = PolyLine::from_coords(&[(0.0, 0.0), (1.0, 0.0)]);
        let d = point_to_polyline_distance(Point2::new(2.0, 2.0), &line);
        assert!((d - 5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn disc_interval_on_horizontal_segment() {
        let iv = segment_disc_interval(Point2::new(0.0, 0.0), Point2::new(10.0, 0.0), Point2::new(5.0, 3.0), 5.0)
            .unwrap();
        assert!((iv.lo - 0.1).abs() < 1e-12);
        assert!((iv.hi - 0.9).abs() < 1e-12);
        assert!(segment_disc_interval(Point2::new(0.0, 0.0), Point2::new(10.0, 0.0), Point2::new(5.0, 3.0), 2.9)
            .is_none());
    }

    #[test]
    fn degenerate_segment_interval() {
        let a = Point2::new(1.0, 1.0);
        assert_eq!(segment_disc_interval(a, a, Point2::new(1.0, 2.0), 1.0), FreeInterval::new(0.0, 1.0));
        assert_eq!(segment_disc_interval(a, a, Point2::new(1.0, 2.0), 0.5), None);
    }

    #[test]
    fn empty_polyline_rejected() {
        assert!(PolyLine::new(vec![]).is_err());
        assert!(PolyLine::new(vec![Point2::new(f64::NAN, 0.0)]).is_err());
    }

    #[test]
    fn slicing_and_arc_points() {
        let line = PolyLine::from_coords(&[(0.0, 0.0), (2.0, 0.0), (2.0, 2.0)]);
        assert_eq!(line.point_at_arc(3.0), Point2::new(2.0, 1.0));
        let sub = line.slice_arc(1.0, 3.0);
        assert_eq!(sub.points(), &[Point2::new(1.0, 0.0), Point2::new(2.0, 0.0), Point2::new(2.0, 1.0)]);
        assert!((sub.length() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn resampling_keeps_vertices_and_bounds_spacing() {
        let line = PolyLine::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 3.0)]);
        let r = line.resampled(0.4);
        assert!(r.points().contains(&Point2::new(1.0, 0.0)));
        assert!(r.points().windows(2).all(|w| w[0].dist(w[1]) <= 0.4 + 1e-12));
        assert!((r.length() - line.length()).abs() < 1e-9);
    }

    #[test]
    fn crossing_segments() {
        let p = |x, y| Point2::new(x, y);
        assert!(segments_intersect(p(0.0, 0.0), p(2.0, 2.0), p(0.0, 2.0), p(2.0, 0.0)));
        assert!(!segments_intersect(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0)));
        assert!(segments_intersect(p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)));
    }
}

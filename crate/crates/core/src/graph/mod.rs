//! Embedded street-map graphs: vertices in the plane joined by polyline edges.
//!
//! Vertices and edges carry external `u64` ids (as read from the input
//! files) and are stored densely; the rest of the crate addresses them by
//! dense index. Parallel edges are allowed, self-loops are not.

mod contract;
pub mod io;
mod paths;
mod stats;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{point_segment_distance, BBox, Point2, PolyLine};

pub use contract::contract_degree_two;
pub use paths::{count_walks, enumerate_paths, paths_through_edge, paths_through_vertex, PathIter, VertexPath};
pub use stats::{graph_stats, GraphStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u64);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Vertex {
    pub id: VertexId,
    pub point: Point2,
}

/// An edge between two distinct vertices. `geometry` starts at `a`'s point
/// and ends at `b`'s point.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: EdgeId,
    pub a: usize,
    pub b: usize,
    pub geometry: PolyLine,
    pub length: f64,
}

impl Edge {
    /// The endpoint opposite `v`.
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct EmbeddedGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
    vertex_index: HashMap<VertexId, usize>,
    edge_index: HashMap<EdgeId, usize>,
}

/// A point on the graph: a position along an edge, measured as arc length
/// from the edge's `a` endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphLocation {
    pub edge: usize,
    pub offset: f64,
    pub point: Point2,
}

impl EmbeddedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, id: VertexId, point: Point2) -> Result<usize> {
        if !point.is_finite() {
            return Err(Error::InvalidInput(format!("vertex {id} has a non-finite coordinate")));
        }
        if self.vertex_index.contains_key(&id) {
            return Err(Error::Structure(format!("duplicate vertex id {id}")));
        }
        let idx = self.vertices.len();
        self.vertices.push(Vertex { id, point });
        self.adjacency.push(Vec::new());
        self.vertex_index.insert(id, idx);
        Ok(idx)
    }

    /// Adds an edge between two existing vertices. `interior` holds the
    /// polyline's bends between the endpoints.
    pub fn add_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId, interior: &[Point2]) -> Result<usize> {
        let a = self.vertex_idx(u).map_err(|_| dangling(id, u))?;
        let b = self.vertex_idx(v).map_err(|_| dangling(id, v))?;
        let mut points = Vec::with_capacity(interior.len() + 2);
        points.push(self.vertices[a].point);
        points.extend_from_slice(interior);
        points.push(self.vertices[b].point);
        self.add_edge_geometry(id, a, b, PolyLine::new(points)?)
    }

    pub(crate) fn add_edge_geometry(&mut self, id: EdgeId, a: usize, b: usize, geometry: PolyLine) -> Result<usize> {
        if a == b {
            return Err(Error::Structure(format!("edge {id} is a self-loop at vertex {}", self.vertices[a].id)));
        }
        if self.edge_index.contains_key(&id) {
            return Err(Error::Structure(format!("duplicate edge id {id}")));
        }
        debug_assert_eq!(geometry.first(), self.vertices[a].point);
        debug_assert_eq!(geometry.last(), self.vertices[b].point);
        let idx = self.edges.len();
        let length = geometry.length();
        self.edges.push(Edge { id, a, b, geometry, length });
        self.adjacency[a].push(idx);
        self.adjacency[b].push(idx);
        self.edge_index.insert(id, idx);
        Ok(idx)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex(&self, idx: usize) -> &Vertex {
        &self.vertices[idx]
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Incident edge indices of vertex `v`, in insertion order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn vertex_idx(&self, id: VertexId) -> Result<usize> {
        self.vertex_index.get(&id).copied().ok_or(Error::UnknownVertex(id.0))
    }

    pub fn edge_idx(&self, id: EdgeId) -> Result<usize> {
        self.edge_index.get(&id).copied().ok_or(Error::UnknownEdge(id.0))
    }

    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).sum()
    }

    pub fn bbox(&self) -> Option<BBox> {
        let vb = BBox::of_points(self.vertices.iter().map(|v| &v.point))?;
        Some(self.edges.iter().fold(vb, |bb, e| bb.union(e.geometry.bbox())))
    }

    /// Geometry of edge `e` oriented to start at vertex `from`.
    pub fn oriented_geometry(&self, e: usize, from: usize) -> PolyLine {
        let edge = &self.edges[e];
        if from == edge.a {
            edge.geometry.clone()
        } else {
            edge.geometry.reversed()
        }
    }

    /// Closest point of the graph's edges to `p` by exhaustive scan.
    pub fn closest_location(&self, p: Point2) -> Option<(GraphLocation, f64)> {
        let mut best: Option<(GraphLocation, f64)> = None;
        for (ei, e) in self.edges.iter().enumerate() {
            let mut acc = 0.0;
            for w in e.geometry.points().windows(2) {
                let (d, t) = point_segment_distance(p, w[0], w[1]);
                let seg = w[0].dist(w[1]);
                if best.as_ref().is_none_or(|b| d < b.1) {
                    let loc = GraphLocation { edge: ei, offset: acc + t * seg, point: w[0].lerp(w[1], t) };
                    best = Some((loc, d));
                }
                acc += seg;
            }
        }
        best
    }
}

fn dangling(edge: EdgeId, v: VertexId) -> Error {
    Error::Structure(format!("edge {edge} references unknown vertex {v}"))
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Builds a graph from `(x, y)` vertices (ids 0..) and straight edges (ids 0..).
    pub fn straight(vertices: &[(f64, f64)], edges: &[(u64, u64)]) -> EmbeddedGraph {
        let mut g = EmbeddedGraph::new();
        for (i, &(x, y)) in vertices.iter().enumerate() {
            g.add_vertex(VertexId(i as u64), Point2::new(x, y)).unwrap();
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(EdgeId(i as u64), VertexId(u), VertexId(v), &[]).unwrap();
        }
        g
    }

    /// Star with center 0 at the origin and `n` leaves at radius `r`.
    pub fn star(n: usize, r: f64) -> EmbeddedGraph {
        let mut verts = vec![(0.0, 0.0)];
        let mut edges = Vec::new();
        for i in 0..n {
            let ang = std::f64::consts::TAU * i as f64 / n as f64;
            verts.push((r * ang.cos(), r * ang.sin()));
            edges.push((0, i as u64 + 1));
        }
        straight(&verts, &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::straight;
    use super::*;

    #[test]
    fn two_vertices_one_edge() {
        let g = straight(&[(0.0, 0.0), (3.0, 4.0)], &[(0, 1)]);
        assert_eq!(g.degree(0), 1);
        assert_eq!(g.degree(1), 1);
        assert_eq!(g.total_length(), 5.0);
    }

    #[test]
    fn rejects_self_loops_duplicates_and_dangling() {
        let mut g = straight(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        assert!(matches!(g.add_edge(EdgeId(5), VertexId(0), VertexId(0), &[]), Err(Error::Structure(_))));
        assert!(matches!(g.add_edge(EdgeId(0), VertexId(0), VertexId(1), &[]), Err(Error::Structure(_))));
        assert!(matches!(g.add_edge(EdgeId(6), VertexId(0), VertexId(9), &[]), Err(Error::Structure(_))));
        assert!(g.add_vertex(VertexId(1), Point2::new(2.0, 2.0)).is_err());
        // Parallel edges are fine.
        g.add_edge(EdgeId(7), VertexId(1), VertexId(0), &[Point2::new(0.5, 1.0)]).unwrap();
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn closest_location_on_bent_edge() {
        let mut g = straight(&[(0.0, 0.0), (4.0, 0.0)], &[]);
        g.add_edge(EdgeId(0), VertexId(0), VertexId(1), &[Point2::new(2.0, 2.0)]).unwrap();
        let (loc, d) = g.closest_location(Point2::new(2.0, 3.0)).unwrap();
        assert!((d - 1.0).abs() < 1e-12);
        assert!((loc.offset - 8f64.sqrt()).abs() < 1e-12);
    }
}

use std::cmp::Ordering;
use std::collections::VecDeque;

use super::{EdgeId, EmbeddedGraph, VertexId};
use crate::error::Result;
use crate::geometry::PolyLine;

/// A walk of `k >= 1` edges through the graph, stored as dense indices.
///
/// Walks may repeat vertices and edges (`u v u` is a valid link-length-two
/// path). A walk and its reverse describe the same undirected path; the
/// enumerators yield only the canonical orientation of each.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexPath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl VertexPath {
    pub fn link_length(&self) -> usize {
        self.edges.len()
    }

    pub fn reversed(&self) -> Self {
        Self {
            vertices: self.vertices.iter().rev().copied().collect(),
            edges: self.edges.iter().rev().copied().collect(),
        }
    }

    /// Orientation used to deduplicate a walk against its reverse: the
    /// lexicographically smaller of the two (vertex sequence, then edges).
    pub fn is_canonical(&self) -> bool {
        canonical_order(&self.vertices, &self.edges) != Ordering::Greater
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: usize) -> bool {
        self.edges.contains(&e)
    }

    /// Checks adjacency: edge `i` joins vertices `i` and `i + 1`.
    pub fn is_valid(&self, g: &EmbeddedGraph) -> bool {
        self.vertices.len() == self.edges.len() + 1
            && self.edges.iter().enumerate().all(|(i, &e)| {
                let edge = g.edge(e);
                let (u, v) = (self.vertices[i], self.vertices[i + 1]);
                (edge.a == u && edge.b == v) || (edge.a == v && edge.b == u)
            })
    }

    /// Concatenated geometry, each edge oriented along the walk and shared
    /// junction points not repeated.
    pub fn geometry(&self, g: &EmbeddedGraph) -> PolyLine {
        let mut line = g.oriented_geometry(self.edges[0], self.vertices[0]);
        for (i, &e) in self.edges.iter().enumerate().skip(1) {
            line.extend_with(&g.oriented_geometry(e, self.vertices[i]));
        }
        line
    }

    pub fn length(&self, g: &EmbeddedGraph) -> f64 {
        self.edges.iter().map(|&e| g.edge(e).length).sum()
    }

    pub fn vertex_ids(&self, g: &EmbeddedGraph) -> Vec<VertexId> {
        self.vertices.iter().map(|&v| g.vertex(v).id).collect()
    }

    pub fn edge_ids(&self, g: &EmbeddedGraph) -> Vec<EdgeId> {
        self.edges.iter().map(|&e| g.edge(e).id).collect()
    }
}

fn canonical_order(vertices: &[usize], edges: &[usize]) -> Ordering {
    vertices
        .iter()
        .cmp(vertices.iter().rev())
        .then_with(|| edges.iter().cmp(edges.iter().rev()))
}

/// Depth-first walk generator over a fixed set of start vertices.
///
/// Yields every canonical walk of exactly `k` edges whose first vertex is in
/// the start set and that passes `keep`. Nothing is materialised beyond the
/// current walk.
pub struct PathIter<'g> {
    graph: &'g EmbeddedGraph,
    k: usize,
    starts: Vec<usize>,
    next_start: usize,
    vertices: Vec<usize>,
    edges: Vec<usize>,
    // Position in the incidence list of `vertices[i]` to try next.
    cursor: Vec<usize>,
    keep: Box<dyn Fn(&[usize], &[usize]) -> bool + Send + Sync + 'g>,
}

impl<'g> PathIter<'g> {
    fn new(
        graph: &'g EmbeddedGraph,
        k: usize,
        starts: Vec<usize>,
        keep: Box<dyn Fn(&[usize], &[usize]) -> bool + Send + Sync + 'g>,
    ) -> Self {
        assert!(k >= 1, "link-length must be at least one");
        Self {
            graph,
            k,
            starts,
            next_start: 0,
            vertices: Vec::with_capacity(k + 1),
            edges: Vec::with_capacity(k),
            cursor: Vec::with_capacity(k + 1),
            keep,
        }
    }
}

impl Iterator for PathIter<'_> {
    type Item = VertexPath;

    fn next(&mut self) -> Option<VertexPath> {
        loop {
            if self.vertices.is_empty() {
                let &s = self.starts.get(self.next_start)?;
                self.next_start += 1;
                self.vertices.push(s);
                self.cursor.push(0);
            }
            let depth = self.vertices.len() - 1;
            let v = self.vertices[depth];
            let incident = self.graph.incident(v);
            let c = self.cursor[depth];
            if c >= incident.len() {
                self.vertices.pop();
                self.cursor.pop();
                self.edges.pop();
                continue;
            }
            self.cursor[depth] += 1;
            let e = incident[c];
            let w = self.graph.edge(e).other(v);
            if depth + 1 == self.k {
                self.vertices.push(w);
                self.edges.push(e);
                let emit = canonical_order(&self.vertices, &self.edges) != Ordering::Greater
                    && (self.keep)(&self.vertices, &self.edges);
                let path = emit.then(|| VertexPath { vertices: self.vertices.clone(), edges: self.edges.clone() });
                self.vertices.pop();
                self.edges.pop();
                if path.is_some() {
                    return path;
                }
            } else {
                self.vertices.push(w);
                self.edges.push(e);
                self.cursor.push(0);
            }
        }
    }
}

/// All canonical link-length-`k` vertex-paths of `g`, each exactly once up
/// to reversal, in a deterministic order.
pub fn enumerate_paths(g: &EmbeddedGraph, k: usize) -> PathIter<'_> {
    PathIter::new(g, k, (0..g.vertex_count()).collect(), Box::new(|_, _| true))
}

/// Vertices within `hops` edges of any vertex in `seeds`, sorted.
fn hop_ball(g: &EmbeddedGraph, seeds: &[usize], hops: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    let mut queue = VecDeque::new();
    for &s in seeds {
        dist[s] = 0;
        queue.push_back(s);
    }
    while let Some(v) = queue.pop_front() {
        if dist[v] == hops {
            continue;
        }
        for &e in g.incident(v) {
            let w = g.edge(e).other(v);
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    (0..g.vertex_count()).filter(|&v| dist[v] != usize::MAX).collect()
}

/// Canonical link-length-`k` paths that visit vertex `v` at any position.
pub fn paths_through_vertex(g: &EmbeddedGraph, v: VertexId, k: usize) -> Result<PathIter<'_>> {
    let vi = g.vertex_idx(v)?;
    let starts = hop_ball(g, &[vi], k);
    Ok(PathIter::new(g, k, starts, Box::new(move |vs, _| vs.contains(&vi))))
}

/// Canonical link-length-`k` paths that traverse edge `e`.
pub fn paths_through_edge(g: &EmbeddedGraph, e: EdgeId, k: usize) -> Result<PathIter<'_>> {
    let ei = g.edge_idx(e)?;
    let edge = g.edge(ei);
    let starts = hop_ball(g, &[edge.a, edge.b], k - 1);
    Ok(PathIter::new(g, k, starts, Box::new(move |_, es| es.contains(&ei))))
}

/// Number of (directed) walks of exactly `k` edges, counted by dynamic
/// programming over vertices. Used to size path sets before enumerating.
pub fn count_walks(g: &EmbeddedGraph, k: usize) -> u128 {
    let mut ways = vec![1u128; g.vertex_count()];
    for _ in 0..k {
        let mut next = vec![0u128; g.vertex_count()];
        for e in g.edges() {
            next[e.a] += ways[e.b];
            next[e.b] += ways[e.a];
        }
        ways = next;
    }
    ways.iter().sum()
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::geometry::Point2;
    use crate::graph::fixtures::{star, straight};

    #[test]
    fn single_edge_one_path() {
        let g = straight(&[(0.0, 0.0), (1.0, 0.0)], &[(0, 1)]);
        assert_eq!(enumerate_paths(&g, 1).count(), 1);
    }

    #[test]
    fn star_link_two() {
        let g = star(4, 1.0);
        let paths: Vec<_> = enumerate_paths(&g, 2).collect();
        // l_i v l_j for unordered pairs including i == j ...
        let centred = paths.iter().filter(|p| p.vertices[1] == 0).count();
        assert_eq!(centred, 6 + 4);
        // ... plus the leaf round trips v l_i v.
        assert_eq!(paths.len(), 14);
        assert!(paths.iter().all(|p| p.is_valid(&g) && p.is_canonical()));
    }

    #[test]
    fn no_path_yielded_with_its_reverse() {
        let g = straight(
            &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 2)],
        );
        for k in 1..=4 {
            let set: HashSet<VertexPath> = enumerate_paths(&g, k).collect();
            for p in &set {
                let r = p.reversed();
                assert!(r == *p || !set.contains(&r));
            }
            // Every directed walk is a path or the reverse of one, palindromes once.
            let palindromes = set.iter().filter(|p| p.reversed() == **p).count() as u128;
            assert_eq!(2 * set.len() as u128 - palindromes, count_walks(&g, k));
        }
    }

    #[test]
    fn through_edge_subset_of_both_endpoints() {
        let g = straight(
            &[(0.0, 0.0), (2.0, 0.0), (4.0, 0.0), (2.0, 2.0), (2.0, -2.0)],
            &[(0, 1), (1, 2), (1, 3), (1, 4), (3, 2)],
        );
        for k in 1..=3 {
            let e = g.edge(0).id;
            let through_e: HashSet<_> = paths_through_edge(&g, e, k).unwrap().collect();
            let through_a: HashSet<_> = paths_through_vertex(&g, VertexId(0), k).unwrap().collect();
            let through_b: HashSet<_> = paths_through_vertex(&g, VertexId(1), k).unwrap().collect();
            assert!(through_e.is_subset(&through_a) && through_e.is_subset(&through_b));
            let all: Vec<_> = enumerate_paths(&g, k).collect();
            let expected: HashSet<_> = all.iter().filter(|p| p.contains_edge(0)).cloned().collect();
            assert_eq!(through_e, expected);
            let expected_v: HashSet<_> = all.iter().filter(|p| p.contains_vertex(1)).cloned().collect();
            assert_eq!(through_b, expected_v);
        }
        assert_eq!(paths_through_edge(&g, EdgeId(2), 1).unwrap().count(), 1);
        assert!(paths_through_vertex(&g, VertexId(99), 2).is_err());
    }

    #[test]
    fn geometry_orientation() {
        let mut g = straight(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)], &[(0, 1)]);
        g.add_edge(EdgeId(1), VertexId(2), VertexId(1), &[Point2::new(2.0, 0.5)]).unwrap();
        let p = VertexPath { vertices: vec![0, 1, 2], edges: vec![0, 1] };
        let line = p.geometry(&g);
        assert_eq!(
            line.points(),
            &[Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(2.0, 0.5), Point2::new(1.0, 1.0)]
        );
        assert_eq!(p.reversed().geometry(&g), line.reversed());
        let single = VertexPath { vertices: vec![0, 1], edges: vec![0] };
        assert_eq!(single.geometry(&g), g.edge(0).geometry);
    }
}

use super::{EdgeId, EmbeddedGraph};
use crate::geometry::PolyLine;

/// Merges every maximal chain through degree-two vertices into one polyline
/// edge.
///
/// Chains run between anchor vertices (degree other than two). A chain that
/// would close on its own anchor keeps its middle vertex as an extra anchor,
/// and an isolated cycle keeps two opposite vertices, so no self-loop is ever
/// produced. A merged edge takes the smallest id among the edges it replaces.
pub fn contract_degree_two(g: &EmbeddedGraph) -> EmbeddedGraph {
    let n = g.vertex_count();
    let mut anchor: Vec<bool> = (0..n).map(|v| g.degree(v) != 2).collect();

    // Loops hanging off an anchor.
    let mut seen = vec![false; g.edge_count()];
    for v in 0..n {
        if !anchor[v] {
            continue;
        }
        for &e in g.incident(v) {
            if seen[e] {
                continue;
            }
            let (end, interior, edges) = walk_chain(g, v, e, &anchor);
            for &ce in &edges {
                seen[ce] = true;
            }
            if end == v && !interior.is_empty() {
                anchor[interior[(interior.len() - 1) / 2]] = true;
            }
        }
    }
    // Isolated cycles: every vertex has degree two.
    for e0 in 0..g.edge_count() {
        if seen[e0] {
            continue;
        }
        let start = g.edge(e0).a;
        let mut cycle = vec![start];
        let (mut v, mut e) = (start, e0);
        loop {
            seen[e] = true;
            v = g.edge(e).other(v);
            if v == start {
                break;
            }
            cycle.push(v);
            e = *g.incident(v).iter().find(|&&x| x != e).unwrap_or(&e);
        }
        let first = (0..cycle.len()).min_by_key(|&i| cycle[i]).unwrap_or(0);
        anchor[cycle[first]] = true;
        anchor[cycle[(first + cycle.len() / 2) % cycle.len()]] = true;
    }

    let mut out = EmbeddedGraph::new();
    let mut new_idx = vec![usize::MAX; n];
    for v in 0..n {
        if anchor[v] {
            let vx = g.vertex(v);
            new_idx[v] = out.add_vertex(vx.id, vx.point).expect("ids unique in source graph");
        }
    }
    let mut used = vec![false; g.edge_count()];
    for v in 0..n {
        if !anchor[v] {
            continue;
        }
        for &e in g.incident(v) {
            if used[e] {
                continue;
            }
            let (end, _, edges) = walk_chain(g, v, e, &anchor);
            let mut geometry: Option<PolyLine> = None;
            let mut at = v;
            for &ce in &edges {
                used[ce] = true;
                let piece = g.oriented_geometry(ce, at);
                match geometry.as_mut() {
                    Some(line) => line.extend_with(&piece),
                    None => geometry = Some(piece),
                }
                at = g.edge(ce).other(at);
            }
            let id = edges.iter().map(|&ce| g.edge(ce).id).min().unwrap_or(EdgeId(0));
            out.add_edge_geometry(id, new_idx[v], new_idx[end], geometry.expect("chain has an edge"))
                .expect("anchors rule out self-loops");
        }
    }
    out
}

/// Follows edge `e` out of `start` through non-anchor vertices. Returns the
/// anchor reached, the interior vertices passed, and the chain's edges.
fn walk_chain(g: &EmbeddedGraph, start: usize, e: usize, anchor: &[bool]) -> (usize, Vec<usize>, Vec<usize>) {
    let mut interior = Vec::new();
    let mut edges = vec![e];
    let mut v = g.edge(e).other(start);
    let mut last = e;
    while !anchor[v] {
        interior.push(v);
        let next = *g.incident(v).iter().find(|&&x| x != last).expect("degree-two vertex");
        edges.push(next);
        v = g.edge(next).other(v);
        last = next;
    }
    (v, interior, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;
    use crate::graph::fixtures::straight;

    #[test]
    fn chain_through_degree_two_vertex() {
        let g = straight(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)], &[(0, 1), (1, 2)]);
        let c = contract_degree_two(&g);
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 1);
        assert!(c.edge(0).geometry.points().contains(&Point2::new(1.0, 1.0)));
        assert_eq!(c.edge(0).geometry.len(), 3);
    }

    #[test]
    fn grid_corners_become_bends() {
        // 3x3 grid: 4 corners of degree 2, 4 sides of degree 3, centre of degree 4.
        let mut verts = Vec::new();
        let mut edges = Vec::new();
        for j in 0..3 {
            for i in 0..3 {
                verts.push((i as f64, j as f64));
                let id = (j * 3 + i) as u64;
                if i < 2 {
                    edges.push((id, id + 1));
                }
                if j < 2 {
                    edges.push((id, id + 3));
                }
            }
        }
        let g = straight(&verts, &edges);
        let c = contract_degree_two(&g);
        assert_eq!(c.vertex_count(), 5);
        assert_eq!(c.edge_count(), 12 - 4);
        assert!((c.total_length() - g.total_length()).abs() < 1e-12);
        assert!((0..c.vertex_count()).all(|v| c.degree(v) != 2));
    }

    #[test]
    fn pure_cycle_split_at_two_anchors() {
        let g = straight(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)], &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let c = contract_degree_two(&g);
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 2);
        assert!(c.edges().iter().all(|e| e.a != e.b));
        assert_eq!(contract_degree_two(&c).edge_count(), 2);
    }

    #[test]
    fn loop_off_an_anchor_keeps_a_midpoint() {
        // Vertex 0 has degree 3: one spur plus a loop 0-1-2-3-0.
        let g = straight(
            &[(0.0, 0.0), (1.0, 1.0), (2.0, 1.0), (1.0, -1.0), (-1.0, 0.0)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)],
        );
        let c = contract_degree_two(&g);
        assert_eq!(c.edge_count(), 3);
        assert!(c.edges().iter().all(|e| e.a != e.b));
        let again = contract_degree_two(&c);
        assert_eq!(again.edge_count(), c.edge_count());
        assert_eq!(again.vertex_count(), c.vertex_count());
    }
}

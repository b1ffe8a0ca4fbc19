use serde::{Deserialize, Serialize};

use super::EmbeddedGraph;

/// Size summary of a street map.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GraphStats {
    pub vertex_count: usize,
    pub vertex_count_degree_not_3: usize,
    pub edge_count: usize,
    pub total_length: f64,
}

pub fn graph_stats(g: &EmbeddedGraph) -> GraphStats {
    GraphStats {
        vertex_count: g.vertex_count(),
        vertex_count_degree_not_3: (0..g.vertex_count()).filter(|&v| g.degree(v) != 3).count(),
        edge_count: g.edge_count(),
        total_length: g.total_length(),
    }
}

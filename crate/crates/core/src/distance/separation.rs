use serde::{Deserialize, Serialize};

use super::{directed_path_distance, intersection_radius, DistanceOptions};
use crate::error::Result;
use crate::graph::{EmbeddedGraph, VertexId};

/// Intersection radii at scale `d` for every vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub d: f64,
    /// `None` stands for an infinite radius.
    pub per_vertex: Vec<(VertexId, Option<f64>)>,
    pub separated: usize,
    pub separated_degree_not_3: usize,
    pub degree_not_3: usize,
    pub vertex_count: usize,
}

impl SeparationReport {
    pub fn fraction(&self) -> f64 {
        if self.vertex_count == 0 {
            0.0
        } else {
            self.separated as f64 / self.vertex_count as f64
        }
    }
}

pub fn separation_report(g: &EmbeddedGraph, d: f64, steps: usize) -> SeparationReport {
    let mut per_vertex = Vec::with_capacity(g.vertex_count());
    let (mut separated, mut sep_not3, mut not3) = (0, 0, 0);
    for (v, vert) in g.vertices().iter().enumerate() {
        let r = intersection_radius(g, v, d, steps);
        let finite = r.is_finite();
        let deg3 = g.degree(v) == 3;
        separated += finite as usize;
        sep_not3 += (finite && !deg3) as usize;
        not3 += (!deg3) as usize;
        per_vertex.push((vert.id, finite.then_some(r)));
    }
    SeparationReport {
        d,
        per_vertex,
        separated,
        separated_degree_not_3: sep_not3,
        degree_not_3: not3,
        vertex_count: g.vertex_count(),
    }
}

/// Separation of the vertices of `g` at d = Δ1, Δ2 and Δ3 from `g` into `h`.
pub fn separation_census(g: &EmbeddedGraph, h: &EmbeddedGraph, options: &DistanceOptions) -> Result<[SeparationReport; 3]> {
    let mut out = Vec::with_capacity(3);
    for k in 1..=3 {
        let d = directed_path_distance(g, h, k, options)?.max;
        out.push(separation_report(g, d, options.radius_steps));
    }
    Ok(out.try_into().expect("three reports"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{star, straight};

    #[test]
    fn identity_separates_every_branching_vertex() {
        let g = straight(
            &[(0.0, 0.0), (5.0, 0.0), (5.0, 5.0), (0.0, 5.0), (-5.0, 2.0)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)],
        );
        let census = separation_census(&g, &g, &DistanceOptions { tolerance: 1e-4, ..Default::default() }).unwrap();
        for rep in &census {
            assert!(rep.d <= 1e-4);
            assert_eq!(rep.separated, 5);
        }
    }

    #[test]
    fn star_with_large_d_has_nothing_separated() {
        let g = star(5, 2.0);
        let rep = separation_report(&g, 3.0, 64);
        assert_eq!(rep.separated, 0);
        assert!(rep.per_vertex.iter().all(|(_, r)| r.is_none()));
        assert_eq!(rep.fraction(), 0.0);
    }
}

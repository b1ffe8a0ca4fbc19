use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::graph::{EdgeId, EmbeddedGraph, VertexId};

/// Perturbed copies of the regular grid over `[0, extent]²` with vertices
/// every `spacing` meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    pub extent: f64,
    pub spacing: f64,
    pub p: f64,
    pub seed_count: usize,
    pub rng_seed: u64,
}

impl Default for PerturbationSpec {
    fn default() -> Self {
        Self { extent: 10.0, spacing: 2.0, p: 0.0, seed_count: 20, rng_seed: 0 }
    }
}

impl PerturbationSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidInput(format!("perturbation p must lie in [0, 1], got {}", self.p)));
        }
        if !(self.spacing > 0.0) || !(self.extent >= self.spacing) {
            return Err(Error::InvalidInput("grid spacing must be positive and no larger than the extent".into()));
        }
        Ok(())
    }

    fn side(&self) -> usize {
        (self.extent / self.spacing).round() as usize + 1
    }
}

/// Unperturbed grid. Vertex `j * n + i` sits at `(i, j) * spacing`; edges
/// are numbered in vertex order, the right neighbour before the upper one.
pub fn base_grid(spec: &PerturbationSpec) -> EmbeddedGraph {
    grid_with(spec, |_, _| (0.0, 0.0))
}

fn grid_with(spec: &PerturbationSpec, mut offset: impl FnMut(usize, usize) -> (f64, f64)) -> EmbeddedGraph {
    let n = spec.side();
    let mut g = EmbeddedGraph::new();
    for j in 0..n {
        for i in 0..n {
            let (a, b) = offset(i, j);
            let p = Point2::new(i as f64 * spec.spacing + a, j as f64 * spec.spacing + b);
            g.add_vertex(VertexId((j * n + i) as u64), p).expect("fresh id");
        }
    }
    let mut eid = 0;
    for j in 0..n {
        for i in 0..n {
            let id = (j * n + i) as u64;
            if i + 1 < n {
                g.add_edge(EdgeId(eid), VertexId(id), VertexId(id + 1), &[]).expect("grid edge");
                eid += 1;
            }
            if j + 1 < n {
                g.add_edge(EdgeId(eid), VertexId(id), VertexId(id + n as u64), &[]).expect("grid edge");
                eid += 1;
            }
        }
    }
    g
}

/// `seed_count` grids with every vertex moved by (α, β), both uniform on
/// `[-p, p]`. Draws come from ChaCha8 seeded with `rng_seed`, α before β,
/// vertices in id order, graphs in sequence.
pub fn generate_perturbed(spec: &PerturbationSpec) -> Result<Vec<EmbeddedGraph>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.rng_seed);
    let p = spec.p;
    Ok((0..spec.seed_count)
        .map(|_| {
            grid_with(spec, |_, _| {
                let a = rng.gen_range(-p..=p);
                let b = rng.gen_range(-p..=p);
                (a, b)
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_shape() {
        let g = base_grid(&PerturbationSpec::default());
        assert_eq!((g.vertex_count(), g.edge_count()), (36, 60));
        assert!((g.total_length() - 120.0).abs() < 1e-12);
        assert_eq!(g.vertex(7).point, Point2::new(2.0, 2.0));
    }

    #[test]
    fn zero_p_is_the_grid() {
        let spec = PerturbationSpec { seed_count: 3, ..Default::default() };
        let base = base_grid(&spec);
        for g in generate_perturbed(&spec).unwrap() {
            assert_eq!(g.vertices(), base.vertices());
            assert_eq!(g.edges(), base.edges());
        }
    }

    #[test]
    fn displacement_stays_in_box_and_is_reproducible() {
        let spec = PerturbationSpec { p: 0.7, seed_count: 5, rng_seed: 42, ..Default::default() };
        let base = base_grid(&spec);
        let a = generate_perturbed(&spec).unwrap();
        let b = generate_perturbed(&spec).unwrap();
        assert_eq!(a, b);
        for g in &a {
            for (v, w) in g.vertices().iter().zip(base.vertices()) {
                assert!((v.point.x - w.point.x).abs() <= 0.7 && (v.point.y - w.point.y).abs() <= 0.7);
                assert!(v.point.dist(w.point) <= 2f64.sqrt() * 0.7);
            }
        }
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn p_out_of_range() {
        assert!(generate_perturbed(&PerturbationSpec { p: 1.5, ..Default::default() }).is_err());
    }
}

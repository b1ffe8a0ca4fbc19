//! The marbles-and-holes F-score: sample both maps around each seed, match
//! samples one to one, and score precision against recall.

use std::fs::File;

use pathdist::experiments::{base_grid, PerturbationSpec};
use pathdist::fscore::{bottleneck_match, f_score, fscore_signature, sample_neighborhood, FScoreParams, Seed};
use pathdist::geometry::Point2;
use pathdist::graph::{EdgeId, EmbeddedGraph};
use pathdist::signature::{export_heatmap, write_signature_csv, Ramp};

/// `g` without one edge.
fn without(g: &EmbeddedGraph, drop: u64) -> pathdist::Result<EmbeddedGraph> {
    let mut h = EmbeddedGraph::new();
    for v in g.vertices() {
        h.add_vertex(v.id, v.point)?;
    }
    for e in g.edges().iter().filter(|e| e.id != EdgeId(drop)) {
        h.add_edge(e.id, g.vertex(e.a).id, g.vertex(e.b).id, &e.geometry.points()[1..e.geometry.len() - 1])?;
    }
    Ok(h)
}

fn main() -> pathdist::Result<()> {
    let out = std::env::args().nth(1).map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("pathdist-examples"));
    std::fs::create_dir_all(&out)?;

    let truth = base_grid(&PerturbationSpec::default());
    let map = without(&truth, 30)?;
    let params = FScoreParams { sampling_interval: 0.5, matched_distance: 0.25, max_path_length: 4.0 };

    // Seed at an end of the missing street.
    let seed = truth.edge(truth.edge_idx(EdgeId(30))?).a;
    let marbles = sample_neighborhood(&map, Seed::Vertex(seed), &params)?;
    let holes = sample_neighborhood(&truth, Seed::Vertex(seed), &params)?;
    let m = bottleneck_match(&marbles.samples, &holes.samples, params.matched_distance);
    let f = f_score(m.matched, marbles.samples.len(), m.matched, holes.samples.len())?;
    println!("seed at vertex {seed}: {} marbles, {} holes, {} matched, F = {f:.3}", marbles.samples.len(), holes.samples.len(), m.matched);

    let pts = [Point2::new(0.0, 0.0), Point2::new(1.0, 0.0)];
    println!("two points 1 m apart match at 1 m: {}", bottleneck_match(&pts[..1], &pts[1..], 1.0).matched);

    let report = fscore_signature(&map, &truth, &params, 4)?;
    println!("global F over {} seeds: {:.3}", report.per_seed.len(), report.global);
    let worst = report.edges.entries().iter().min_by(|a, b| a.value.total_cmp(&b.value)).unwrap();
    println!("lowest edge score: edge {} at {:.3}", worst.id, worst.value);

    write_signature_csv(&report.edges, File::create(out.join("fscore.csv"))?)?;
    // Low scores are bad, so the ramp is inverted to draw them red.
    export_heatmap(&map, &report.edges, &out.join("fscore.svg"), Ramp::Linear, true)?;
    println!("per-edge scores in {}", out.display());
    Ok(())
}

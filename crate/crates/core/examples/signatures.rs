//! Local signatures: the worst match distance of the paths through each
//! edge, their length-weighted CDF, and heat-maps in SVG and GeoJSON.

use std::fs::File;

use pathdist::distance::{directed_path_distance, DistanceOptions};
use pathdist::geometry::Point2;
use pathdist::graph::{EdgeId, EmbeddedGraph, VertexId};
use pathdist::signature::{cdf, export_cdf_plot, export_heatmap, write_signature_csv, Ramp};

/// A 6 x 6 block grid with 100 m blocks.
fn city(shift: impl Fn(usize, usize) -> (f64, f64), skip: &[(usize, usize)]) -> pathdist::Result<EmbeddedGraph> {
    let mut g = EmbeddedGraph::new();
    let id = |i: usize, j: usize| VertexId((j * 6 + i) as u64);
    for j in 0..6 {
        for i in 0..6 {
            let (dx, dy) = shift(i, j);
            g.add_vertex(id(i, j), Point2::new(i as f64 * 100.0 + dx, j as f64 * 100.0 + dy))?;
        }
    }
    let mut e = 0;
    for j in 0..6 {
        for i in 0..6 {
            for (ni, nj) in [(i + 1, j), (i, j + 1)] {
                if ni < 6 && nj < 6 && !skip.contains(&(j * 6 + i, nj * 6 + ni)) {
                    g.add_edge(EdgeId(e), id(i, j), id(ni, nj), &[])?;
                }
                e += 1;
            }
        }
    }
    Ok(g)
}

fn main() -> pathdist::Result<()> {
    let out = std::env::args().nth(1).map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("pathdist-examples"));
    std::fs::create_dir_all(&out)?;

    // The ground truth; the reconstruction drifts east and misses two streets.
    let truth = city(|_, _| (0.0, 0.0), &[])?;
    let map = city(|i, j| (if i >= 3 { 12.0 } else { 0.0 }, (j as f64) * 0.5), &[(14, 15), (14, 20)])?;

    let mut curves = Vec::new();
    let mut labels = Vec::new();
    for k in 1..=3 {
        let report = directed_path_distance(&truth, &map, k, &DistanceOptions { workers: 4, ..Default::default() })?;
        let (edges, vertices) = report.signatures(&truth);
        let worst = edges.entries().iter().max_by(|a, b| a.value.total_cmp(&b.value)).unwrap();
        println!("k={k}: {} edges, worst edge {} at {:.1} m, {} vertices", edges.len(), worst.id, worst.value, vertices.len());

        write_signature_csv(&edges, File::create(out.join(format!("signature_k{k}.csv")))?)?;
        export_heatmap(&truth, &edges, &out.join(format!("heatmap_k{k}.svg")), Ramp::Quantile, false)?;
        export_heatmap(&truth, &edges, &out.join(format!("heatmap_k{k}.geojson")), Ramp::Linear, false)?;

        let curve = cdf(&edges)?;
        println!("      {:.0}% of street length within 20 m", 100.0 * curve.at(20.0));
        curves.push(curve);
        labels.push(format!("k = {k}"));
    }
    export_cdf_plot(&curves, &labels, &out.join("cdf.svg"))?;
    println!("heat-maps and CDF plot in {}", out.display());
    Ok(())
}

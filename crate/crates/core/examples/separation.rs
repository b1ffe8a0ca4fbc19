//! Intersection radii of vertices and the share of vertices that are
//! separated at a given distance.

use pathdist::distance::{
    intersection_radius, intersection_radius_closed_form, min_incident_angle, separation_report, DEFAULT_RADIUS_STEPS,
};
use pathdist::geometry::Point2;
use pathdist::graph::{EdgeId, EmbeddedGraph, VertexId};

fn main() -> pathdist::Result<()> {
    let mut g = EmbeddedGraph::new();
    let pts = [(0.0, 0.0), (40.0, 0.0), (-40.0, 0.0), (0.0, 40.0), (30.0, 12.0), (0.0, -3.0), (-40.0, 60.0)];
    for (i, &(x, y)) in pts.iter().enumerate() {
        g.add_vertex(VertexId(i as u64), Point2::new(x, y))?;
    }
    // Vertex 0 is a crossing with a sharp turn towards vertex 4 and a short
    // stub to vertex 5; vertex 3 bends on a curved street.
    for (i, &(a, b)) in [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (3, 6)].iter().enumerate() {
        g.add_edge(EdgeId(i as u64), VertexId(a), VertexId(b), &[])?;
    }
    g.add_edge(EdgeId(9), VertexId(1), VertexId(4), &[Point2::new(45.0, 8.0)])?;

    for d in [1.0, 2.5, 5.0] {
        println!("d = {d} m");
        for v in 0..g.vertex_count() {
            let r = intersection_radius(&g, v, d, DEFAULT_RADIUS_STEPS);
            let closed = intersection_radius_closed_form(&g, v, d);
            let angle = min_incident_angle(&g, v).map(f64::to_degrees);
            println!(
                "  vertex {} degree {} min angle {:>6} radius {:>8} closed form {:?}",
                g.vertex(v).id.0,
                g.degree(v),
                angle.map_or("-".into(), |a| format!("{a:.1}")),
                if r.is_finite() { format!("{r:.3}") } else { "inf".into() },
                closed.map(|c| (c * 1000.0).round() / 1000.0),
            );
        }
        let rep = separation_report(&g, d, DEFAULT_RADIUS_STEPS);
        println!(
            "  separated: {}/{} ({} of {} with degree other than 3)",
            rep.separated, rep.vertex_count, rep.separated_degree_not_3, rep.degree_not_3
        );
    }
    Ok(())
}

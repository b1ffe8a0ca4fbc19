//! Fréchet distance between two polylines, the decision procedure it is
//! built on, and the discrete variant on resampled vertices.

use pathdist::frechet::{discrete_frechet, frechet_decision, frechet_distance};
use pathdist::geometry::PolyLine;

fn main() -> pathdist::Result<()> {
    let road = PolyLine::from_coords(&[(0.0, 0.0), (50.0, 0.0), (50.0, 40.0), (90.0, 40.0)]);
    let trace = PolyLine::from_coords(&[(1.0, 2.0), (48.0, -1.5), (52.5, 38.0), (89.0, 41.0)]);

    let d = frechet_distance(&road, &trace, 1e-3)?;
    println!("continuous Fréchet distance: {d:.4} m");
    println!("decision at d - 0.01: {}", frechet_decision(&road, &trace, d - 0.01)?);
    println!("decision at d + 0.01: {}", frechet_decision(&road, &trace, d + 0.01)?);

    println!("discrete on input vertices: {:.4} m", discrete_frechet(&road, &trace));
    for s in [5.0, 1.0, 0.25] {
        let dd = discrete_frechet(&road.resampled(s), &trace.resampled(s));
        println!("discrete at spacing {s:>4} m: {dd:.4} m");
    }

    // Symmetric, and unchanged when both curves are reversed.
    let back = frechet_distance(&trace.reversed(), &road.reversed(), 1e-3)?;
    println!("reversed and swapped: {back:.4} m");
    Ok(())
}

//! Map-matching a noisy trace into a small street map: the distance to the
//! closest path in the graph and the path that attains it.

use pathdist::geometry::PolyLine;
use pathdist::graph::io::read_graph;
use pathdist::matching::{MatchOptions, Matcher};

const VERTICES: &str = "id,x,y
1,0,0
2,100,0
3,200,0
4,100,80
5,200,80
6,0,80
";

// Edge 7 is a curved street given by interior points.
const EDGES: &str = "id,u,v,interior
1,1,2
2,2,3
3,2,4
4,4,5
5,3,5
6,1,6
7,6,4,30,95,70,95
";

fn main() -> pathdist::Result<()> {
    let h = read_graph(VERTICES.as_bytes(), EDGES.as_bytes(), ("vertices", "edges"))?;
    let matcher = Matcher::new(&h, MatchOptions::default());

    // Drives east, turns north at vertex 2, then east again.
    let trace = PolyLine::from_coords(&[(5.0, 3.0), (60.0, -2.0), (103.0, 4.0), (98.0, 45.0), (104.0, 79.0), (170.0, 83.0)]);
    let d = matcher.distance(&trace, 1e-3)?;
    println!("trace matches the map within {d:.3} m");

    let w = matcher.witness(&trace, d + 1e-3)?.expect("feasible at the computed distance");
    println!("matched path ({} points, {:.1} m):", w.path.len(), w.path.length());
    for p in w.path.points() {
        println!("  ({:.2}, {:.2})", p.x, p.y);
    }

    // Cutting across the block is far from every street.
    let shortcut = PolyLine::from_coords(&[(0.0, 0.0), (200.0, 80.0)]);
    println!("diagonal shortcut: {:.3} m", matcher.distance(&shortcut, 1e-3)?);

    // The spatial index only prunes; an exhaustive scan agrees.
    let slow = Matcher::new(&h, MatchOptions { exhaustive: true, ..Default::default() });
    println!("exhaustive scan: {:.3} m", slow.distance(&trace, 1e-3)?);
    Ok(())
}

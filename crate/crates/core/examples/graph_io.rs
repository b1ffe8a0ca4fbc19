//! Reading a street map from vertex and edge CSV, contracting degree-two
//! vertices, enumerating paths, and exporting GeoJSON.

use pathdist::graph::io::{read_graph, to_geojson, write_graph};
use pathdist::graph::{contract_degree_two, count_walks, enumerate_paths, graph_stats};

const VERTICES: &str = "id,x,y
10,0,0
11,30,0
12,60,5
13,60,40
14,90,5
";

const EDGES: &str = "id,u,v
1,10,11
2,11,12
3,12,13
4,12,14,75,-5
";

fn main() -> pathdist::Result<()> {
    let g = read_graph(VERTICES.as_bytes(), EDGES.as_bytes(), ("vertices", "edges"))?;
    println!("{:?}", graph_stats(&g));

    // Vertex 11 only joins two edges; contraction merges them.
    let c = contract_degree_two(&g);
    println!("after contraction: {:?}", graph_stats(&c));

    for k in 1..=3 {
        let paths: Vec<_> = enumerate_paths(&c, k).collect();
        println!("k={k}: {} paths up to reversal ({} directed walks)", paths.len(), count_walks(&c, k));
        for p in paths.iter().take(3) {
            let ids: Vec<u64> = p.vertex_ids(&c).iter().map(|v| v.0).collect();
            println!("    {ids:?} {:.1} m", p.length(&c));
        }
    }

    let mut v = Vec::new();
    let mut e = Vec::new();
    write_graph(&c, &mut v, &mut e)?;
    print!("{}{}", String::from_utf8_lossy(&v), String::from_utf8_lossy(&e));
    println!("{}", serde_json::to_string(&to_geojson(&c))?);
    Ok(())
}

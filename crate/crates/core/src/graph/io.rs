//! CSV ingestion and export of graphs and curves, plus GeoJSON export.
//!
//! Vertex rows are `id,x,y`; edge rows are `id,u,v[,x1,y1,...]` where the
//! optional trailing pairs are interior polyline points. A header line is
//! optional and recognised by a non-numeric first field.

use std::fs::File;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde_json::json;

use super::{EdgeId, EmbeddedGraph, VertexId};
use crate::error::{Error, Result};
use crate::geometry::{Point2, PolyLine};

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => Error::Io(e),
    })
}

fn reader<R: Read>(r: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(r)
}

fn parse_field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, what: &str, src: &str, line: usize) -> Result<T> {
    let raw = rec.get(i).ok_or_else(|| Error::Parse { path: src.into(), line, message: format!("missing {what}") })?;
    raw.parse().map_err(|_| Error::Parse { path: src.into(), line, message: format!("bad {what} {raw:?}") })
}

fn is_header(rec: &csv::StringRecord) -> bool {
    rec.get(0).is_some_and(|f| f.parse::<f64>().is_err())
}

fn rows<R: Read>(r: R, src: &str) -> Result<Vec<(usize, csv::StringRecord)>> {
    let mut out = Vec::new();
    for (i, rec) in reader(r).into_records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse { path: src.into(), line: i + 1, message: e.to_string() })?;
        let line = rec.position().map_or(i + 1, |p| p.line() as usize);
        if out.is_empty() && is_header(&rec) {
            continue;
        }
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, rec));
    }
    Ok(out)
}

/// Reads a graph from vertex and edge CSV streams. `names` label the
/// sources in error messages.
pub fn read_graph<V: Read, E: Read>(vertices: V, edges: E, names: (&str, &str)) -> Result<EmbeddedGraph> {
    let mut g = EmbeddedGraph::new();
    for (line, rec) in rows(vertices, names.0)? {
        if rec.len() != 3 {
            return Err(Error::Parse { path: names.0.into(), line, message: format!("expected id,x,y, got {} fields", rec.len()) });
        }
        let id: u64 = parse_field(&rec, 0, "vertex id", names.0, line)?;
        let x: f64 = parse_field(&rec, 1, "x", names.0, line)?;
        let y: f64 = parse_field(&rec, 2, "y", names.0, line)?;
        g.add_vertex(VertexId(id), Point2::new(x, y))
            .map_err(|e| Error::Parse { path: names.0.into(), line, message: e.to_string() })?;
    }
    for (line, rec) in rows(edges, names.1)? {
        if rec.len() < 3 || (rec.len() - 3) % 2 != 0 {
            return Err(Error::Parse {
                path: names.1.into(),
                line,
                message: format!("expected id,u,v[,x,y...], got {} fields", rec.len()),
            });
        }
        let id: u64 = parse_field(&rec, 0, "edge id", names.1, line)?;
        let u: u64 = parse_field(&rec, 1, "endpoint", names.1, line)?;
        let v: u64 = parse_field(&rec, 2, "endpoint", names.1, line)?;
        let mut interior = Vec::new();
        for i in (3..rec.len()).step_by(2) {
            let x: f64 = parse_field(&rec, i, "x", names.1, line)?;
            let y: f64 = parse_field(&rec, i + 1, "y", names.1, line)?;
            interior.push(Point2::new(x, y));
        }
        g.add_edge(EdgeId(id), VertexId(u), VertexId(v), &interior).map_err(|e| match e {
            Error::Structure(m) => Error::Structure(format!("{}:{line}: {m}", names.1)),
            other => other,
        })?;
    }
    Ok(g)
}

pub fn load_graph(vertex_file: &Path, edge_file: &Path) -> Result<EmbeddedGraph> {
    read_graph(
        open(vertex_file)?,
        open(edge_file)?,
        (&vertex_file.display().to_string(), &edge_file.display().to_string()),
    )
}

/// Resolves a graph argument to its two files: a directory holding
/// `vertices.csv` and `edges.csv`, or a prefix `P` naming `P_vertices.csv`
/// and `P_edges.csv`. `P.csv`, `P_vertices.csv` and `P_edges.csv` are all
/// accepted as spellings of the prefix.
pub fn graph_files(arg: &Path) -> (PathBuf, PathBuf) {
    if arg.is_dir() {
        return (arg.join("vertices.csv"), arg.join("edges.csv"));
    }
    let s = arg.display().to_string();
    let s = s.strip_suffix(".csv").unwrap_or(&s);
    let s = s.strip_suffix("_vertices").or_else(|| s.strip_suffix("_edges")).unwrap_or(s);
    (PathBuf::from(format!("{s}_vertices.csv")), PathBuf::from(format!("{s}_edges.csv")))
}

pub fn load_graph_arg(arg: &Path) -> Result<EmbeddedGraph> {
    let (v, e) = graph_files(arg);
    load_graph(&v, &e)
}

pub fn write_graph<V: Write, E: Write>(g: &EmbeddedGraph, vertices: V, edges: E) -> Result<()> {
    let mut vw = csv::Writer::from_writer(vertices);
    vw.write_record(["id", "x", "y"])?;
    for v in g.vertices() {
        vw.write_record([v.id.to_string(), v.point.x.to_string(), v.point.y.to_string()])?;
    }
    vw.flush()?;
    let mut ew = csv::WriterBuilder::new().flexible(true).from_writer(edges);
    ew.write_record(["id", "u", "v"])?;
    for e in g.edges() {
        let mut rec = vec![e.id.to_string(), g.vertex(e.a).id.to_string(), g.vertex(e.b).id.to_string()];
        let pts = e.geometry.points();
        for p in &pts[1..pts.len() - 1] {
            rec.push(p.x.to_string());
            rec.push(p.y.to_string());
        }
        ew.write_record(&rec)?;
    }
    ew.flush()?;
    Ok(())
}

/// Writes `g` as `vertices.csv` / `edges.csv` into `dir`.
pub fn save_graph_dir(g: &EmbeddedGraph, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_graph(g, File::create(dir.join("vertices.csv"))?, File::create(dir.join("edges.csv"))?)
}

/// Reads a curve as `x,y` rows.
pub fn read_curve<R: Read>(r: R, name: &str) -> Result<PolyLine> {
    let mut pts = Vec::new();
    for (line, rec) in rows(r, name)? {
        if rec.len() != 2 {
            return Err(Error::Parse { path: name.into(), line, message: format!("expected x,y, got {} fields", rec.len()) });
        }
        pts.push(Point2::new(parse_field(&rec, 0, "x", name, line)?, parse_field(&rec, 1, "y", name, line)?));
    }
    PolyLine::new(pts).map_err(|e| Error::Parse { path: name.into(), line: 0, message: e.to_string() })
}

pub fn load_curve(path: &Path) -> Result<PolyLine> {
    read_curve(open(path)?, &path.display().to_string())
}

/// GeoJSON FeatureCollection with one LineString per edge, in the input
/// planar frame.
pub fn to_geojson(g: &EmbeddedGraph) -> serde_json::Value {
    let features: Vec<_> = g
        .edges()
        .iter()
        .map(|e| {
            let coords: Vec<_> = e.geometry.points().iter().map(|p| json!([p.x, p.y])).collect();
            json!({
                "type": "Feature",
                "properties": { "edge_id": e.id.0, "u": g.vertex(e.a).id.0, "v": g.vertex(e.b).id.0 },
                "geometry": { "type": "LineString", "coordinates": coords },
            })
        })
        .collect();
    json!({ "type": "FeatureCollection", "features": features })
}

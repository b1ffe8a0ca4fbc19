//! Directed path-based distance and its local signatures.
//!
//! Every canonical link-length-`k` vertex-path of the source graph is
//! map-matched into the target graph. The directed distance is the largest
//! of these matching distances; per-edge and per-vertex signatures are the
//! largest over the paths that use the edge or vertex.

mod radius;
mod separation;

use std::fmt;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use radius::{
    intersection_radius, intersection_radius_closed_form, intersection_radius_numeric, min_incident_angle,
    DEFAULT_RADIUS_STEPS,
};
pub use separation::{separation_census, separation_report, SeparationReport};

use crate::error::{Error, Result};
use crate::frechet::DEFAULT_TOLERANCE;
use crate::graph::{enumerate_paths, EmbeddedGraph, VertexPath};
use crate::matching::{MatchOptions, Matcher};
use crate::signature::{SignatureEntry, SignatureMap, SignatureTarget};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "G->H")]
    GToH,
    #[serde(rename = "H->G")]
    HToG,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::GToH => "G->H",
            Direction::HToG => "H->G",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceOptions {
    pub tolerance: f64,
    pub workers: usize,
    /// Paths evaluated per parallel batch; results are flushed per batch.
    pub chunk_size: usize,
    pub matching: MatchOptions,
    /// Keep only paths whose interior vertices are Δ3-separated and not of
    /// degree three.
    pub strict: bool,
    pub radius_steps: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self {
            tolerance: DEFAULT_TOLERANCE,
            workers: 1,
            chunk_size: 512,
            matching: MatchOptions::default(),
            strict: false,
            radius_steps: DEFAULT_RADIUS_STEPS,
        }
    }
}

impl DistanceOptions {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(Error::InvalidInput(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if self.workers == 0 {
            return Err(Error::InvalidInput("workers must be at least 1".into()));
        }
        if self.chunk_size == 0 || self.radius_steps == 0 {
            return Err(Error::InvalidInput("chunk size and radius steps must be positive".into()));
        }
        Ok(())
    }

    pub(crate) fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot start {} workers: {e}", self.workers)))
    }
}

/// Matching result for one source path.
#[derive(Debug, Clone, PartialEq)]
pub struct PathRecord {
    /// Position of the path in enumeration order.
    pub id: usize,
    pub path: VertexPath,
    pub length: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathDistanceReport {
    pub k: usize,
    pub direction: Direction,
    pub per_path: Vec<PathRecord>,
    pub max: f64,
    pub weighted_p90: f64,
    pub unweighted_p90: f64,
    pub weighted_mean: f64,
    /// `2 r_d + d` when every vertex is Δ3-separated and none has degree
    /// three (strict mode only).
    pub strict_bound: Option<f64>,
}

/// Flat summary written next to the per-path CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSummary {
    pub k: usize,
    pub direction: Direction,
    pub max: f64,
    pub p90_weighted: f64,
    pub p90_unweighted: f64,
    pub mean_weighted: f64,
    pub path_count: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub strict_bound: Option<f64>,
}

/// Smallest value whose cumulative weight reaches fraction `q` of the total.
/// Falls back to equal weights when all weights are zero.
pub fn weighted_quantile(values: &[f64], weights: &[f64], q: f64) -> Option<f64> {
    assert_eq!(values.len(), weights.len());
    if values.is_empty() {
        return None;
    }
    let total: f64 = weights.iter().sum();
    let unit = total <= 0.0;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    let total = if unit { values.len() as f64 } else { total };
    let target = q.clamp(0.0, 1.0) * total * (1.0 - 1e-12);
    let mut acc = 0.0;
    for &i in &order {
        acc += if unit { 1.0 } else { weights[i] };
        if acc >= target {
            return Some(values[i]);
        }
    }
    order.last().map(|&i| values[i])
}

impl PathDistanceReport {
    pub fn from_records(k: usize, direction: Direction, per_path: Vec<PathRecord>) -> Self {
        let values: Vec<f64> = per_path.iter().map(|r| r.distance).collect();
        let lengths: Vec<f64> = per_path.iter().map(|r| r.length).collect();
        let ones = vec![1.0; values.len()];
        let max = values.iter().copied().fold(0.0, f64::max);
        let total: f64 = lengths.iter().sum();
        let weighted_mean = if values.is_empty() {
            0.0
        } else if total > 0.0 {
            values.iter().zip(&lengths).map(|(d, l)| d * l).sum::<f64>() / total
        } else {
            values.iter().sum::<f64>() / values.len() as f64
        };
        Self {
            k,
            direction,
            max,
            weighted_p90: weighted_quantile(&values, &lengths, 0.9).unwrap_or(0.0),
            unweighted_p90: weighted_quantile(&values, &ones, 0.9).unwrap_or(0.0),
            weighted_mean,
            per_path,
            strict_bound: None,
        }
    }

    pub fn summary(&self) -> ReportSummary {
        ReportSummary {
            k: self.k,
            direction: self.direction,
            max: self.max,
            p90_weighted: self.weighted_p90,
            p90_unweighted: self.unweighted_p90,
            mean_weighted: self.weighted_mean,
            path_count: self.per_path.len(),
            strict_bound: self.strict_bound,
        }
    }

    /// Edge and vertex signatures over the paths in this report.
    pub fn signatures(&self, g: &EmbeddedGraph) -> (SignatureMap, SignatureMap) {
        signatures_from_records(g, self.k, &self.per_path)
    }
}

/// Streams per-path rows as CSV: `path_id,vertex_sequence,path_length_m,match_distance_m`.
pub struct ReportCsvWriter<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> ReportCsvWriter<W> {
    pub fn new(w: W, header: bool) -> Result<Self> {
        let mut inner = csv::Writer::from_writer(w);
        if header {
            inner.write_record(["path_id", "vertex_sequence", "path_length_m", "match_distance_m"])?;
        }
        Ok(Self { inner })
    }

    pub fn write(&mut self, g: &EmbeddedGraph, records: &[PathRecord]) -> Result<()> {
        for r in records {
            let seq: Vec<String> = r.path.vertex_ids(g).iter().map(ToString::to_string).collect();
            self.inner.write_record([
                r.id.to_string(),
                seq.join(" "),
                r.length.to_string(),
                r.distance.to_string(),
            ])?;
        }
        self.inner.flush()?;
        Ok(())
    }
}

/// Previously written rows of a per-path CSV as (id, length, distance),
/// up to the first incomplete row.
pub fn read_report_rows<R: Read>(r: R) -> Result<Vec<(usize, f64, f64)>> {
    Ok(read_report_prefix(r)?.0)
}

fn read_report_prefix<R: Read>(r: R) -> Result<(Vec<(usize, f64, f64)>, Vec<csv::StringRecord>)> {
    let mut text = String::new();
    let mut r = r;
    r.read_to_string(&mut text)?;
    // A row without its newline may have been cut mid-number.
    text.truncate(text.rfind('\n').map_or(0, |i| i + 1));
    let mut rows = Vec::new();
    let mut raw = Vec::new();
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(text.as_bytes());
    for rec in rdr.records() {
        let Ok(rec) = rec else { break };
        let parsed = (|| Some((rec.get(0)?.parse().ok()?, rec.get(2)?.parse().ok()?, rec.get(3)?.parse().ok()?)))();
        match parsed {
            Some(row) if rec.len() == 4 && row.0 == rows.len() => rows.push(row),
            _ => break,
        }
        raw.push(rec);
    }
    Ok((rows, raw))
}

/// Map-matches numbered `paths` into the matcher's graph in parallel batches.
///
/// Each batch is handed to `sink` in input order, so the sequence of
/// records does not depend on the worker count.
pub fn evaluate_paths<I>(
    g: &EmbeddedGraph,
    matcher: &Matcher<'_>,
    paths: I,
    options: &DistanceOptions,
    mut sink: impl FnMut(&[PathRecord]) -> Result<()>,
) -> Result<()>
where
    I: Iterator<Item = (usize, VertexPath)>,
{
    options.validate()?;
    let pool = options.pool()?;
    let mut paths = paths.peekable();
    while paths.peek().is_some() {
        let batch: Vec<(usize, VertexPath)> = paths.by_ref().take(options.chunk_size).collect();
        let records = pool.install(|| {
            batch
                .into_par_iter()
                .map(|(id, path)| {
                    let geometry = path.geometry(g);
                    let distance = matcher.distance(&geometry, options.tolerance)?;
                    Ok(PathRecord { id, length: path.length(g), path, distance })
                })
                .collect::<Result<Vec<_>>>()
        })?;
        sink(&records)?;
    }
    Ok(())
}

/// Takes the first `done.len()` paths from `paths` as already evaluated.
fn replay<I: Iterator<Item = (usize, VertexPath)>>(
    paths: &mut I,
    done: &[(usize, f64, f64)],
    out: &mut Vec<PathRecord>,
) -> Result<()> {
    for &(id, length, distance) in done {
        match paths.next() {
            Some((i, path)) if i == id => out.push(PathRecord { id, path, length, distance }),
            _ => return Err(Error::InvalidInput(format!("resume file does not match the path enumeration at row {id}"))),
        }
    }
    Ok(())
}

fn check_inputs(g: &EmbeddedGraph, h: &EmbeddedGraph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidInput("link-length k must be at least 1".into()));
    }
    if g.edge_count() == 0 {
        return Err(Error::InvalidInput("source graph has no edges".into()));
    }
    if h.edge_count() == 0 && h.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

/// Paths of `g` kept in strict mode, given the Δ3 scale `d`: every interior
/// vertex has finite intersection radius and degree other than three.
fn strict_filter(g: &EmbeddedGraph, d: f64, steps: usize) -> Vec<bool> {
    (0..g.vertex_count())
        .map(|v| g.degree(v) != 3 && intersection_radius(g, v, d, steps).is_finite())
        .collect()
}

fn strict_bound(g: &EmbeddedGraph, d: f64, steps: usize) -> Option<f64> {
    let mut r_max: f64 = 0.0;
    for v in 0..g.vertex_count() {
        if g.degree(v) == 0 {
            continue;
        }
        if g.degree(v) == 3 {
            return None;
        }
        let r = intersection_radius(g, v, d, steps);
        if !r.is_finite() {
            return None;
        }
        r_max = r_max.max(r);
    }
    Some(2.0 * r_max + d)
}

/// Δk from `g` into `h`, streaming every newly evaluated batch through
/// `sink`. Rows in `done` (id, length, distance) were computed earlier and
/// are taken as-is for the leading paths.
pub fn directed_path_distance_with(
    g: &EmbeddedGraph,
    h: &EmbeddedGraph,
    k: usize,
    direction: Direction,
    options: &DistanceOptions,
    done: &[(usize, f64, f64)],
    mut sink: impl FnMut(&[PathRecord]) -> Result<()>,
) -> Result<PathDistanceReport> {
    check_inputs(g, h, k)?;
    let matcher = Matcher::new(h, options.matching);
    let mut records = Vec::new();
    let mut bound = None;
    let mut collect = |batch: &[PathRecord]| {
        records.extend_from_slice(batch);
        sink(batch)
    };
    if options.strict {
        let mut d3: f64 = 0.0;
        let loose = DistanceOptions { strict: false, ..*options };
        evaluate_paths(g, &matcher, enumerate_paths(g, 3).enumerate(), &loose, |batch| {
            d3 = batch.iter().map(|r| r.distance).fold(d3, f64::max);
            Ok(())
        })?;
        let keep = strict_filter(g, d3, options.radius_steps);
        let mut paths = enumerate_paths(g, k)
            .filter(|p| p.vertices[1..p.vertices.len() - 1].iter().all(|&v| keep[v]))
            .enumerate();
        let mut prior = Vec::new();
        replay(&mut paths, done, &mut prior)?;
        evaluate_paths(g, &matcher, paths, options, &mut collect)?;
        records.splice(0..0, prior);
        bound = strict_bound(g, d3, options.radius_steps);
    } else {
        let mut paths = enumerate_paths(g, k).enumerate();
        let mut prior = Vec::new();
        replay(&mut paths, done, &mut prior)?;
        evaluate_paths(g, &matcher, paths, options, &mut collect)?;
        records.splice(0..0, prior);
    }
    let mut report = PathDistanceReport::from_records(k, direction, records);
    report.strict_bound = bound;
    Ok(report)
}

/// Runs Δk and streams per-path rows to `csv_path`. With `resume`, rows
/// already in the file are kept and only the remaining paths are evaluated.
pub fn directed_path_distance_to_csv(
    g: &EmbeddedGraph,
    h: &EmbeddedGraph,
    k: usize,
    direction: Direction,
    options: &DistanceOptions,
    csv_path: &std::path::Path,
    resume: bool,
) -> Result<PathDistanceReport> {
    let (done, raw) = if resume && csv_path.exists() {
        read_report_prefix(std::fs::File::open(csv_path)?)?
    } else {
        (Vec::new(), Vec::new())
    };
    let file = if done.is_empty() {
        std::fs::File::create(csv_path)?
    } else {
        // Rewrite the accepted prefix so a torn last line is dropped.
        let mut w = csv::Writer::from_writer(std::fs::File::create(csv_path)?);
        w.write_record(["path_id", "vertex_sequence", "path_length_m", "match_distance_m"])?;
        for rec in &raw {
            w.write_record(rec)?;
        }
        w.flush()?;
        drop(w);
        std::fs::OpenOptions::new().append(true).open(csv_path)?
    };
    let mut writer = ReportCsvWriter::new(file, done.is_empty())?;
    directed_path_distance_with(g, h, k, direction, options, &done, |batch| writer.write(g, batch))
}

/// Directed path-based distance Δk from `g` into `h`.
pub fn directed_path_distance(
    g: &EmbeddedGraph,
    h: &EmbeddedGraph,
    k: usize,
    options: &DistanceOptions,
) -> Result<PathDistanceReport> {
    directed_path_distance_with(g, h, k, Direction::GToH, options, &[], |_| Ok(()))
}

/// Both directed reports; the undirected distance is the larger maximum.
pub fn undirected_path_distance(
    g: &EmbeddedGraph,
    h: &EmbeddedGraph,
    k: usize,
    options: &DistanceOptions,
) -> Result<(PathDistanceReport, PathDistanceReport, f64)> {
    let fwd = directed_path_distance_with(g, h, k, Direction::GToH, options, &[], |_| Ok(()))?;
    let bwd = directed_path_distance_with(h, g, k, Direction::HToG, options, &[], |_| Ok(()))?;
    let d = fwd.max.max(bwd.max);
    Ok((fwd, bwd, d))
}

/// Per-edge and per-vertex maxima over the given path records.
pub fn signatures_from_records(g: &EmbeddedGraph, k: usize, records: &[PathRecord]) -> (SignatureMap, SignatureMap) {
    let mut edge_val: Vec<Option<f64>> = vec![None; g.edge_count()];
    let mut vertex_val: Vec<Option<f64>> = vec![None; g.vertex_count()];
    for r in records {
        for &e in &r.path.edges {
            edge_val[e] = Some(edge_val[e].map_or(r.distance, |v| v.max(r.distance)));
        }
        for &v in &r.path.vertices {
            vertex_val[v] = Some(vertex_val[v].map_or(r.distance, |x| x.max(r.distance)));
        }
    }
    let edges = edge_val
        .iter()
        .enumerate()
        .filter_map(|(e, v)| v.map(|value| SignatureEntry { id: g.edge(e).id.0, length: g.edge(e).length, value }))
        .collect();
    let vertices = vertex_val
        .iter()
        .enumerate()
        .filter_map(|(v, x)| x.map(|value| SignatureEntry { id: g.vertex(v).id.0, length: 0.0, value }))
        .collect();
    (SignatureMap::new(SignatureTarget::Edge, k, edges), SignatureMap::new(SignatureTarget::Vertex, k, vertices))
}

/// Δ_{k,e} for every edge of `g`.
pub fn edge_signature(g: &EmbeddedGraph, h: &EmbeddedGraph, k: usize, options: &DistanceOptions) -> Result<SignatureMap> {
    Ok(directed_path_distance(g, h, k, options)?.signatures(g).0)
}

/// Δ_{k,v} for every non-isolated vertex of `g`.
pub fn vertex_signature(g: &EmbeddedGraph, h: &EmbeddedGraph, k: usize, options: &DistanceOptions) -> Result<SignatureMap> {
    Ok(directed_path_distance(g, h, k, options)?.signatures(g).1)
}

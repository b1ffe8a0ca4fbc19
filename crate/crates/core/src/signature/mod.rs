//! Per-edge and per-vertex signature maps, their length-weighted CDF, and
//! CSV storage.

mod export;

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

pub use export::{
    cdf_plot_svg, color_for, export_cdf_plot, export_heatmap, heatmap_geojson, heatmap_svg, parse_heatmap_geojson,
    ramp_values, HeatmapFormat, Ramp,
};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EmbeddedGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignatureTarget {
    Edge,
    Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignatureEntry {
    pub id: u64,
    /// Edge length in meters; zero for vertex entries.
    pub length: f64,
    pub value: f64,
}

/// Signature values keyed by edge or vertex id, sorted by id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureMap {
    pub target: SignatureTarget,
    pub k: usize,
    entries: Vec<SignatureEntry>,
}

impl SignatureMap {
    pub fn new(target: SignatureTarget, k: usize, mut entries: Vec<SignatureEntry>) -> Self {
        entries.sort_by_key(|e| e.id);
        Self { target, k, entries }
    }

    pub fn entries(&self) -> &[SignatureEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value(&self, id: u64) -> Option<f64> {
        self.entries.binary_search_by_key(&id, |e| e.id).ok().map(|i| self.entries[i].value)
    }

    pub fn max_value(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.value).reduce(f64::max)
    }

    pub fn min_value(&self) -> Option<f64> {
        self.entries.iter().map(|e| e.value).reduce(f64::min)
    }

    pub fn total_length(&self) -> f64 {
        self.entries.iter().map(|e| e.length).sum()
    }

    /// Checks that every id exists in `g` and every value is non-negative.
    pub fn validate(&self, g: &EmbeddedGraph) -> Result<()> {
        for e in &self.entries {
            match self.target {
                SignatureTarget::Edge => g.edge_idx(EdgeId(e.id)).map(drop)?,
                SignatureTarget::Vertex => g.vertex_idx(VertexId(e.id)).map(drop)?,
            }
            if !(e.value >= 0.0) {
                return Err(Error::InvalidInput(format!("negative signature {} for id {}", e.value, e.id)));
            }
        }
        Ok(())
    }
}

/// Right-continuous step function of the length-weighted signature
/// distribution: `y` is the fraction of length with signature `<= x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdfCurve {
    pub breakpoints: Vec<(f64, f64)>,
}

impl CdfCurve {
    pub fn at(&self, x: f64) -> f64 {
        match self.breakpoints.partition_point(|&(bx, _)| bx <= x) {
            0 => 0.0,
            i => self.breakpoints[i - 1].1,
        }
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(w);
        w.write_record(["x_m", "fraction"])?;
        for (x, y) in &self.breakpoints {
            w.write_record([x.to_string(), y.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn cdf(sig: &SignatureMap) -> Result<CdfCurve> {
    if sig.target != SignatureTarget::Edge {
        return Err(Error::InvalidInput("the CDF is defined over edge signatures".into()));
    }
    if sig.is_empty() {
        return Err(Error::InvalidInput("empty signature".into()));
    }
    let total = sig.total_length();
    let unit = total <= 0.0;
    let mut sorted: Vec<_> = sig.entries().to_vec();
    sorted.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut breakpoints: Vec<(f64, f64)> = Vec::new();
    let mut acc = 0.0;
    for (i, e) in sorted.iter().enumerate() {
        acc += if unit { 1.0 } else { e.length };
        if sorted.get(i + 1).is_none_or(|n| n.value != e.value) {
            let y = if i + 1 == sorted.len() { 1.0 } else { (acc / if unit { sorted.len() as f64 } else { total }).min(1.0) };
            breakpoints.push((e.value, y));
        }
    }
    Ok(CdfCurve { breakpoints })
}

pub fn cdf_at(sig: &SignatureMap, x: f64) -> Result<f64> {
    Ok(cdf(sig)?.at(x))
}

fn id_column(target: SignatureTarget) -> &'static str {
    match target {
        SignatureTarget::Edge => "edge_id",
        SignatureTarget::Vertex => "vertex_id",
    }
}

/// Writes `edge_id,length_m,signature_m` rows (`vertex_id` for vertex maps).
pub fn write_signature_csv<W: Write>(sig: &SignatureMap, w: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(w);
    w.write_record([id_column(sig.target), "length_m", "signature_m"])?;
    for e in sig.entries() {
        w.write_record([e.id.to_string(), e.length.to_string(), e.value.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_signature_csv<R: Read>(r: R, k: usize, name: &str) -> Result<SignatureMap> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let target = match rdr.headers()?.get(0) {
        Some("vertex_id") => SignatureTarget::Vertex,
        _ => SignatureTarget::Edge,
    };
    let mut entries = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::Parse { path: name.into(), line, message: e.to_string() })?;
        let field = |j: usize| -> Result<f64> {
            rec.get(j)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse { path: name.into(), line, message: format!("bad field {}", j + 1) })
        };
        let id = rec
            .get(0)
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse { path: name.into(), line, message: "bad id".into() })?;
        entries.push(SignatureEntry { id, length: field(1)?, value: field(2)? });
    }
    Ok(SignatureMap::new(target, k, entries))
}

pub fn load_signature_csv(path: &Path, k: usize) -> Result<SignatureMap> {
    let f = std::fs::File::open(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::MissingFile(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    read_signature_csv(f, k, &path.display().to_string())
}

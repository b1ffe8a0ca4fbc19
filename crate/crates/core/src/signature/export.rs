use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{cdf, CdfCurve, SignatureEntry, SignatureMap, SignatureTarget};
use crate::error::{Error, Result};
use crate::geometry::{BBox, Point2};
use crate::graph::EmbeddedGraph;

const MARGIN: f64 = 10.0;
const CANVAS: f64 = 800.0;
// Light yellow to dark red.
const STOPS: [(u8, u8, u8); 5] = [(0xff, 0xff, 0xb2), (0xfe, 0xcc, 0x5c), (0xfd, 0x8d, 0x3c), (0xf0, 0x3b, 0x20), (0xbd, 0x00, 0x26)];
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ramp {
    Linear,
    #[default]
    Quantile,
}

impl FromStr for Ramp {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Ramp::Linear),
            "quantile" => Ok(Ramp::Quantile),
            other => Err(Error::Usage(format!("unknown ramp {other:?} (expected linear or quantile)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeatmapFormat {
    Svg,
    GeoJson,
}

impl FromStr for HeatmapFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(HeatmapFormat::Svg),
            "geojson" | "json" => Ok(HeatmapFormat::GeoJson),
            other => Err(Error::Usage(format!("unsupported heat-map format {other:?}"))),
        }
    }
}

impl HeatmapFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        path.extension()
            .and_then(|e| e.to_str())
            .ok_or_else(|| Error::Usage(format!("cannot infer heat-map format of {}", path.display())))?
            .parse()
    }
}

/// Ramp position in `[0, 1]` for each entry, in entry order. With `invert`
/// high values map to the light end (useful for similarity scores).
pub fn ramp_values(sig: &SignatureMap, ramp: Ramp, invert: bool) -> Result<Vec<f64>> {
    let vals: Vec<f64> = match ramp {
        Ramp::Linear => {
            let (lo, hi) = (sig.min_value().unwrap_or(0.0), sig.max_value().unwrap_or(0.0));
            sig.entries().iter().map(|e| if hi > lo { (e.value - lo) / (hi - lo) } else { 1.0 }).collect()
        }
        Ramp::Quantile => {
            if sig.is_empty() {
                return Ok(Vec::new());
            }
            let weighted = SignatureMap { target: SignatureTarget::Edge, ..sig.clone() };
            let curve = cdf(&weighted)?;
            sig.entries().iter().map(|e| curve.at(e.value)).collect()
        }
    };
    Ok(if invert { vals.into_iter().map(|v| 1.0 - v).collect() } else { vals })
}

pub fn color_for(t: f64) -> String {
    let t = if t.is_finite() { t.clamp(0.0, 1.0) } else { 1.0 };
    let pos = t * (STOPS.len() - 1) as f64;
    let i = (pos.floor() as usize).min(STOPS.len() - 2);
    let f = pos - i as f64;
    let mix = |a: u8, b: u8| (a as f64 + (b as f64 - a as f64) * f).round() as u8;
    let (a, b) = (STOPS[i], STOPS[i + 1]);
    format!("#{:02x}{:02x}{:02x}", mix(a.0, b.0), mix(a.1, b.1), mix(a.2, b.2))
}

struct Frame {
    bb: BBox,
    scale: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn new(bb: BBox) -> Self {
        let span = bb.width().max(bb.height());
        let scale = if span > 0.0 { CANVAS / span } else { 1.0 };
        Self { bb, scale, width: bb.width() * scale + 2.0 * MARGIN, height: bb.height() * scale + 2.0 * MARGIN }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (MARGIN + (p.x - self.bb.min.x) * self.scale, MARGIN + (self.bb.max.y - p.y) * self.scale)
    }
}

fn edge_lookup<'a>(g: &EmbeddedGraph, sig: &'a SignatureMap, ramp: Ramp, invert: bool) -> Result<Vec<Option<(&'a SignatureEntry, f64)>>> {
    if sig.target != SignatureTarget::Edge {
        return Err(Error::InvalidInput("heat-maps are drawn from edge signatures".into()));
    }
    sig.validate(g)?;
    let ramp = ramp_values(sig, ramp, invert)?;
    let mut out = vec![None; g.edge_count()];
    for (entry, t) in sig.entries().iter().zip(ramp) {
        out[g.edge_idx(crate::graph::EdgeId(entry.id))?] = Some((entry, t));
    }
    Ok(out)
}

/// SVG with one stroked polyline per edge; edges without a value are gray.
pub fn heatmap_svg(g: &EmbeddedGraph, sig: &SignatureMap, ramp: Ramp, invert: bool) -> Result<String> {
    let lookup = edge_lookup(g, sig, ramp, invert)?;
    let frame = Frame::new(g.bbox().unwrap_or(BBox { min: Point2::new(0.0, 0.0), max: Point2::new(0.0, 0.0) }));
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{:.2}" height="{:.2}" viewBox="0 0 {:.2} {:.2}">"#,
        frame.width, frame.height, frame.width, frame.height
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (e, hit) in g.edges().iter().zip(&lookup) {
        let pts: Vec<String> = e
            .geometry
            .points()
            .iter()
            .map(|&p| {
                let (x, y) = frame.map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let (stroke, title) = match hit {
            Some((entry, t)) => (color_for(*t), format!("edge {}: {:.3} m", e.id, entry.value)),
            None => ("#bbbbbb".to_string(), format!("edge {}", e.id)),
        };
        writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="2" stroke-linecap="round"><title>{title}</title></polyline>"#,
            pts.join(" ")
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// FeatureCollection with `edge_id`, `length_m`, `signature_m` and
/// `ramp_value` per edge.
pub fn heatmap_geojson(g: &EmbeddedGraph, sig: &SignatureMap, ramp: Ramp, invert: bool) -> Result<Value> {
    let lookup = edge_lookup(g, sig, ramp, invert)?;
    let features: Vec<Value> = g
        .edges()
        .iter()
        .zip(&lookup)
        .filter_map(|(e, hit)| {
            let (entry, t) = (*hit)?;
            let coords: Vec<Value> = e.geometry.points().iter().map(|p| json!([p.x, p.y])).collect();
            Some(json!({
                "type": "Feature",
                "properties": {
                    "edge_id": e.id.0,
                    "length_m": entry.length,
                    "signature_m": entry.value,
                    "ramp_value": t,
                    "color": color_for(t),
                },
                "geometry": { "type": "LineString", "coordinates": coords },
            }))
        })
        .collect();
    Ok(json!({ "type": "FeatureCollection", "k": sig.k, "features": features }))
}

/// Reads the signature values back out of [`heatmap_geojson`] output.
pub fn parse_heatmap_geojson(v: &Value) -> Result<SignatureMap> {
    let bad = |m: &str| Error::InvalidInput(format!("heat-map GeoJSON: {m}"));
    let k = v.get("k").and_then(Value::as_u64).unwrap_or(0) as usize;
    let features = v.get("features").and_then(Value::as_array).ok_or_else(|| bad("missing features"))?;
    let mut entries = Vec::with_capacity(features.len());
    for f in features {
        let p = f.get("properties").ok_or_else(|| bad("feature without properties"))?;
        let num = |key: &str| p.get(key).and_then(Value::as_f64).ok_or_else(|| bad(&format!("missing {key}")));
        let id = p.get("edge_id").and_then(Value::as_u64).ok_or_else(|| bad("missing edge_id"))?;
        entries.push(SignatureEntry { id, length: num("length_m")?, value: num("signature_m")? });
    }
    Ok(SignatureMap::new(SignatureTarget::Edge, k, entries))
}

pub fn export_heatmap(g: &EmbeddedGraph, sig: &SignatureMap, path: &Path, ramp: Ramp, invert: bool) -> Result<()> {
    let body = match HeatmapFormat::from_path(path)? {
        HeatmapFormat::Svg => heatmap_svg(g, sig, ramp, invert)?,
        HeatmapFormat::GeoJson => serde_json::to_string_pretty(&heatmap_geojson(g, sig, ramp, invert)?)?,
    };
    std::fs::write(path, body)?;
    Ok(())
}

/// Step plot of one or more CDFs with a gray reference line at 20 m.
pub fn cdf_plot_svg(curves: &[CdfCurve], labels: &[String]) -> Result<String> {
    if curves.is_empty() {
        return Err(Error::Usage("no CDF curves to plot".into()));
    }
    let (w, h) = (640.0, 400.0);
    let (left, right, top, bottom) = (60.0, 20.0, 20.0, 50.0);
    let x_max = curves
        .iter()
        .flat_map(|c| c.breakpoints.iter().map(|b| b.0))
        .fold(20.0f64, f64::max)
        * 1.05;
    let px = |x: f64| left + x / x_max * (w - left - right);
    let py = |y: f64| top + (1.0 - y) * (h - top - bottom);
    let mut s = String::new();
    writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r##"<path d="M{:.2},{:.2} L{:.2},{:.2} L{:.2},{:.2}" fill="none" stroke="#000000"/>"##,
        px(0.0),
        py(1.0),
        px(0.0),
        py(0.0),
        px(x_max),
        py(0.0)
    )
    .unwrap();
    for i in 0..=4 {
        let y = i as f64 / 4.0;
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{y:.2}</text>"#, px(0.0) - 6.0, py(y) + 4.0).unwrap();
    }
    for i in 0..=5 {
        let x = x_max * i as f64 / 5.0;
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="middle">{x:.1}</text>"#, px(x), py(0.0) + 16.0).unwrap();
    }
    writeln!(
        s,
        r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999999" stroke-dasharray="4 3"/>"##,
        px(20.0),
        py(0.0),
        px(20.0),
        py(1.0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">distance (m)</text>"#,
        (left + w - right) / 2.0,
        h - 10.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="14" y="{:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 14 {:.2})">fraction of length</text>"#,
        (top + h - bottom) / 2.0,
        (top + h - bottom) / 2.0
    )
    .unwrap();
    for (i, c) in curves.iter().enumerate() {
        let stroke = PALETTE[i % PALETTE.len()];
        let mut d = format!("M{:.2},{:.2}", px(0.0), py(0.0));
        let mut prev = 0.0;
        for &(x, y) in &c.breakpoints {
            write!(d, " L{:.2},{:.2} L{:.2},{:.2}", px(x), py(prev), px(x), py(y)).unwrap();
            prev = y;
        }
        write!(d, " L{:.2},{:.2}", px(x_max), py(prev)).unwrap();
        writeln!(s, r#"<path d="{d}" fill="none" stroke="{stroke}" stroke-width="1.5"/>"#).unwrap();
        let label = labels.get(i).cloned().unwrap_or_else(|| format!("curve {}", i + 1));
        let ly = top + 14.0 * (i as f64 + 1.0);
        writeln!(
            s,
            r#"<text x="{:.2}" y="{ly:.2}" font-size="11" fill="{stroke}" text-anchor="end">{}</text>"#,
            w - right - 4.0,
            escape(&label)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    Ok(s)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn export_cdf_plot(curves: &[CdfCurve], labels: &[String], path: &Path) -> Result<()> {
    std::fs::write(path, cdf_plot_svg(curves, labels)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::straight;

    fn square() -> EmbeddedGraph {
        straight(&[(0.0, 0.0), (4.0, 0.0), (4.0, 2.0), (0.0, 2.0)], &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    fn sig(vals: &[f64]) -> SignatureMap {
        let g = square();
        SignatureMap::new(
            SignatureTarget::Edge,
            2,
            vals.iter()
                .enumerate()
                .map(|(i, &value)| SignatureEntry { id: i as u64, length: g.edge(i).length, value })
                .collect(),
        )
    }

    #[test]
    fn uniform_signature_is_one_color() {
        let svg = heatmap_svg(&square(), &sig(&[3.0; 4]), Ramp::Linear, false).unwrap();
        assert_eq!(svg.matches(&color_for(1.0)).count(), 4);
    }

    #[test]
    fn two_values_two_colors_and_max_is_one() {
        let s = sig(&[1.0, 9.0, 1.0, 9.0]);
        let q = ramp_values(&s, Ramp::Quantile, false).unwrap();
        assert_eq!(q[1], 1.0);
        assert!(q[0] < 1.0);
        let l = ramp_values(&s, Ramp::Linear, false).unwrap();
        assert_eq!((l[0], l[1]), (0.0, 1.0));
        let svg = heatmap_svg(&square(), &s, Ramp::Quantile, false).unwrap();
        let colors: std::collections::BTreeSet<_> = svg.match_indices("stroke=\"#").map(|(i, _)| &svg[i + 8..i + 15]).collect();
        assert_eq!(colors.len(), 2);
    }

    #[test]
    fn ramp_endpoints() {
        assert_eq!(color_for(0.0), "#ffffb2");
        assert_eq!(color_for(1.0), "#bd0026");
    }

    #[test]
    fn svg_is_deterministic_and_flipped() {
        let a = heatmap_svg(&square(), &sig(&[0.0, 1.0, 2.0, 3.0]), Ramp::Linear, false).unwrap();
        let b = heatmap_svg(&square(), &sig(&[0.0, 1.0, 2.0, 3.0]), Ramp::Linear, false).unwrap();
        assert_eq!(a, b);
        // Vertex (0,0) lies at the bottom-left, 10 px from each border.
        assert!(a.contains(r#"points="10.00,410.00 810.00,410.00""#), "{a}");
    }

    #[test]
    fn geojson_round_trip() {
        let s = sig(&[0.5, 1.25, 2.0, 1.0 / 3.0]);
        let v = heatmap_geojson(&square(), &s, Ramp::Quantile, false).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        let back = parse_heatmap_geojson(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, s);
        assert_eq!(v["features"][2]["properties"]["ramp_value"], 1.0);
    }

    #[test]
    fn bad_format_is_usage_error() {
        assert!(HeatmapFormat::from_path(Path::new("x.png")).unwrap_err().is_usage());
        assert!("bogus".parse::<Ramp>().unwrap_err().is_usage());
    }

    #[test]
    fn cdf_plot() {
        assert!(cdf_plot_svg(&[], &[]).unwrap_err().is_usage());
        let c = cdf(&sig(&[1.0, 2.0, 3.0, 4.0])).unwrap();
        let one = cdf_plot_svg(std::slice::from_ref(&c), &["a".into()]).unwrap();
        assert!(one.contains("#999999"));
        let two = cdf_plot_svg(&[c.clone(), c], &["a".into(), "b".into()]).unwrap();
        assert!(two.contains(PALETTE[0]) && two.contains(PALETTE[1]));
    }
}

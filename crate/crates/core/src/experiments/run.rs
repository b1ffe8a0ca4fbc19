use std::fs::File;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::config::RunConfig;
use crate::distance::{
    directed_path_distance_to_csv, separation_report, Direction, DistanceOptions, PathDistanceReport, ReportSummary,
};
use crate::error::{Error, Result};
use crate::graph::io::load_graph_arg;
use crate::graph::{contract_degree_two, graph_stats, EmbeddedGraph};
use crate::matching::MatchOptions;
use crate::signature::{cdf, export_cdf_plot, export_heatmap, write_signature_csv};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub files: Vec<String>,
    pub distances: Vec<ReportSummary>,
}

struct Out<'a> {
    dir: &'a Path,
    files: Vec<String>,
}

impl Out<'_> {
    fn path(&mut self, name: &str) -> std::path::PathBuf {
        self.files.push(name.to_string());
        self.dir.join(name)
    }

    fn json(&mut self, name: &str, v: &impl Serialize) -> Result<()> {
        let p = self.path(name);
        let mut text = serde_json::to_string_pretty(v)?;
        text.push('\n');
        std::fs::write(p, text)?;
        Ok(())
    }
}

fn load(arg: &Path, contract: bool) -> Result<EmbeddedGraph> {
    let g = load_graph_arg(arg)?;
    Ok(if contract { contract_degree_two(&g) } else { g })
}

fn label(d: Direction) -> &'static str {
    match d {
        Direction::GToH => "G-H",
        Direction::HToG => "H-G",
    }
}

/// Writes stats, distance reports, signatures, CDFs, heat-maps and the
/// separation census for one graph pair into `config.out_dir`, followed by
/// `manifest.json` listing every file.
pub fn run_all(config: &RunConfig) -> Result<Manifest> {
    config.validate()?;
    let (from, to) = (config.from.as_deref().unwrap(), config.to.as_deref().unwrap());
    let g = load(from, config.contract)?;
    let h = load(to, config.contract)?;
    if g.edge_count() == 0 {
        return Err(Error::InvalidInput(format!("{} has no edges", from.display())));
    }
    std::fs::create_dir_all(&config.out_dir)?;
    let mut out = Out { dir: &config.out_dir, files: Vec::new() };
    let options = DistanceOptions {
        tolerance: config.tolerance,
        workers: config.workers,
        strict: config.strict,
        radius_steps: config.radius_steps,
        matching: MatchOptions { cell_size: config.cell_size, exhaustive: config.exhaustive },
        ..Default::default()
    };

    out.json("stats.json", &json!({ "G": graph_stats(&g), "H": graph_stats(&h) }))?;

    let mut ks = config.k.clone();
    ks.sort_unstable();
    ks.dedup();
    let mut summaries = Vec::new();
    let mut curves = Vec::new();
    let mut labels = Vec::new();
    let mut forward: Vec<PathDistanceReport> = Vec::new();
    for &k in &ks {
        let mut dirs = vec![(Direction::GToH, &g, &h)];
        if config.both {
            dirs.push((Direction::HToG, &h, &g));
        }
        for (dir, a, b) in dirs {
            let stem = format!("distance_k{k}_{}", label(dir));
            let csv = out.path(&format!("{stem}.csv"));
            let report = directed_path_distance_to_csv(a, b, k, dir, &options, &csv, false)?;
            out.json(&format!("{stem}.json"), &report.summary())?;
            summaries.push(report.summary());
            if dir == Direction::GToH {
                forward.push(report);
            }
        }
    }
    for report in &forward {
        let k = report.k;
        let (edges, vertices) = report.signatures(&g);
        write_signature_csv(&edges, File::create(out.path(&format!("signature_k{k}.csv")))?)?;
        write_signature_csv(&vertices, File::create(out.path(&format!("vertex_signature_k{k}.csv")))?)?;
        export_heatmap(&g, &edges, &out.path(&format!("heatmap_k{k}.svg")), config.ramp, false)?;
        export_heatmap(&g, &edges, &out.path(&format!("heatmap_k{k}.geojson")), config.ramp, false)?;
        let curve = cdf(&edges)?;
        curve.write_csv(File::create(out.path(&format!("cdf_k{k}.csv")))?)?;
        curves.push(curve);
        labels.push(format!("k = {k}"));
    }
    export_cdf_plot(&curves, &labels, &out.path("cdf.svg"))?;

    // Separation at d = Δ1, Δ2, Δ3; reuses reports already computed.
    let mut census = Vec::new();
    for k in 1..=3 {
        let d = match forward.iter().find(|r| r.k == k) {
            Some(r) => r.max,
            None => crate::distance::directed_path_distance(&g, &h, k, &DistanceOptions { strict: false, ..options })?.max,
        };
        let rep = separation_report(&g, d, options.radius_steps);
        census.push(json!({
            "k": k,
            "d": d,
            "separated": rep.separated,
            "separated_degree_not_3": rep.separated_degree_not_3,
            "degree_not_3": rep.degree_not_3,
            "vertex_count": rep.vertex_count,
            "fraction": rep.fraction(),
        }));
    }
    out.json("separation.json", &census)?;

    let mut manifest = Manifest {
        tool: "pathdist".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: config.clone(),
        files: out.files.clone(),
        distances: summaries,
    };
    manifest.files.push("manifest.json".into());
    out.json("manifest.json", &manifest)?;
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::straight;
    use crate::graph::io::save_graph_dir;

    #[test]
    fn identity_run_is_complete_and_repeatable() {
        let root = std::env::temp_dir().join(format!("pathdist-run-{}", std::process::id()));
        let g = straight(
            &[(0.0, 0.0), (10.0, 0.0), (10.0, 8.0), (0.0, 8.0), (5.0, 4.0)],
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2)],
        );
        save_graph_dir(&g, &root.join("g")).unwrap();
        let cfg = |out: &str| RunConfig {
            from: Some(root.join("g")),
            to: Some(root.join("g")),
            k: vec![1, 2],
            both: true,
            out_dir: root.join(out),
            ..Default::default()
        };
        let m = run_all(&cfg("a")).unwrap();
        for f in &m.files {
            assert!(root.join("a").join(f).exists(), "{f}");
        }
        assert!(m.distances.iter().all(|s| s.max <= 1e-3));
        run_all(&RunConfig { workers: 3, ..cfg("b") }).unwrap();
        for f in m.files.iter().filter(|f| f.ends_with(".csv")) {
            assert_eq!(std::fs::read(root.join("a").join(f)).unwrap(), std::fs::read(root.join("b").join(f)).unwrap(), "{f}");
        }
        std::fs::remove_dir_all(&root).ok();
    }

    #[test]
    fn missing_input_is_usage_error() {
        let cfg = RunConfig { from: Some("/nope/g".into()), to: Some("/nope/h".into()), ..Default::default() };
        assert!(run_all(&cfg).unwrap_err().is_usage());
    }
}

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pathdist::distance::{
    directed_path_distance, directed_path_distance_to_csv, separation_census, separation_report, Direction,
    DistanceOptions, PathDistanceReport, DEFAULT_RADIUS_STEPS,
};
use pathdist::experiments::{
    base_grid, generate_perturbed, run_all, run_perturbation_study, PerturbationSpec, RunConfig, StudySpec,
};
use pathdist::frechet::{frechet_distance, DEFAULT_TOLERANCE};
use pathdist::fscore::{fscore_signature, FScoreParams};
use pathdist::graph::io::{load_curve, load_graph_arg, save_graph_dir};
use pathdist::graph::{contract_degree_two, graph_stats, EmbeddedGraph};
use pathdist::matching::{MatchOptions, Matcher, DEFAULT_CELL_SIZE};
use pathdist::signature::{cdf, export_cdf_plot, export_heatmap, load_signature_csv, write_signature_csv, Ramp};
use pathdist::{Error, Result};

/// Path-based distances between embedded street maps.
#[derive(Parser)]
#[command(name = "pathdist", version, allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Absolute tolerance of every distance search, in meters.
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Remove degree-two vertices from input graphs before use.
    #[arg(long, global = true)]
    contract: bool,
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
}

/// A graph argument is a directory with `vertices.csv` and `edges.csv`, or a
/// prefix `P` for `P_vertices.csv` and `P_edges.csv`.
#[derive(Args)]
struct Pair {
    #[arg(long)]
    from: PathBuf,
    #[arg(long)]
    to: PathBuf,
}

#[derive(Subcommand)]
enum Cmd {
    /// Vertex, edge and length counts of a graph.
    Stats {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Directed path-based distance, with per-path CSV and summary JSON.
    Distance {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        k: usize,
        /// Also compute the reverse direction.
        #[arg(long)]
        both: bool,
        /// Only paths whose interior vertices are separated and not of degree three.
        #[arg(long)]
        strict: bool,
        /// Per-path CSV; the reverse direction goes to `<stem>_reverse.csv`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Continue an interrupted per-path CSV instead of starting over.
        #[arg(long, requires = "out")]
        resume: bool,
        #[arg(long, default_value_t = DEFAULT_CELL_SIZE)]
        cell_size: f64,
        /// Consider every edge for every match instead of using the spatial index.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Per-edge signature, with optional heat-maps.
    Signature {
        #[command(flatten)]
        pair: Pair,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        vertex_out: Option<PathBuf>,
        #[arg(long)]
        heatmap: Option<PathBuf>,
        #[arg(long)]
        geojson: Option<PathBuf>,
        #[arg(long, default_value = "quantile")]
        ramp: Ramp,
        /// High values drawn yellow instead of red.
        #[arg(long)]
        invert: bool,
    },
    /// Length-weighted CDF of a signature CSV.
    Cdf {
        #[arg(long)]
        sig: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Intersection radii and separation of the vertices of `from`.
    Separation {
        #[command(flatten)]
        pair: Pair,
        /// Test at this d instead of at Δ1, Δ2 and Δ3 into `to`.
        #[arg(long)]
        d: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_RADIUS_STEPS)]
        radius_steps: usize,
        /// Per-vertex radii CSV (with --d).
        #[arg(long, requires = "d")]
        out: Option<PathBuf>,
    },
    /// Fréchet distance from a curve to the closest path in a graph.
    Mapmatch {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        curve: PathBuf,
    },
    /// Fréchet distance between two curves given as `x,y` CSV files.
    Frechet { a: PathBuf, b: PathBuf },
    /// Marbles-and-holes F-score baseline.
    Fscore {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 5.0)]
        interval: f64,
        #[arg(long, default_value_t = 20.0)]
        match_dist: f64,
        #[arg(long, default_value_t = 300.0)]
        max_path: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        heatmap: Option<PathBuf>,
    },
    /// Writes the base grid and its perturbed copies.
    Perturb {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 20)]
        seeds: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
    /// Perturbed-grid study: distances per p and seed, summary and boxplot.
    Study {
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.3,0.5,0.7,0.9")]
        p_values: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        seeds: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
    /// Everything for one graph pair, from a `key = value` config file.
    Run {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Extra `key=value` settings applied after the file.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        #[arg(long)]
        from: Option<PathBuf>,
        #[arg(long)]
        to: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        k: Vec<usize>,
        #[arg(long)]
        both: bool,
        #[arg(long)]
        strict: bool,
    },
}

fn load(path: &Path, contract: bool) -> Result<EmbeddedGraph> {
    let g = load_graph_arg(path)?;
    Ok(if contract { contract_degree_two(&g) } else { g })
}

fn out_path(common: &Common, name: &str) -> Result<PathBuf> {
    let dir = common.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    Ok(dir.join(name))
}

fn print_json(v: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn write_json(path: &Path, v: &impl serde::Serialize) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

fn reverse_name(p: &Path) -> PathBuf {
    let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match p.extension() {
        Some(ext) => format!("{stem}_reverse.{}", ext.to_string_lossy()),
        None => format!("{stem}_reverse"),
    };
    p.with_file_name(name)
}

fn options(common: &Common) -> DistanceOptions {
    DistanceOptions { tolerance: common.tol, workers: common.workers, ..Default::default() }
}

fn check_common(common: &Common) -> Result<()> {
    if !(common.tol > 0.0) {
        return Err(Error::Usage(format!("--tol must be positive, got {}", common.tol)));
    }
    if common.workers == 0 {
        return Err(Error::Usage("--workers must be at least 1".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let c = &cli.common;
    check_common(c)?;
    match cli.cmd {
        Cmd::Stats { graph } => print_json(&graph_stats(&load(&graph, c.contract)?)),
        Cmd::Distance { pair, k, both, strict, out, resume, cell_size, exhaustive } => {
            let g = load(&pair.from, c.contract)?;
            let h = load(&pair.to, c.contract)?;
            let opts = DistanceOptions {
                strict,
                matching: MatchOptions { cell_size, exhaustive },
                ..options(c)
            };
            let out = match (out, &c.out_dir) {
                (Some(p), _) => Some(p),
                (None, Some(_)) => Some(out_path(c, &format!("distance_k{k}.csv"))?),
                (None, None) => None,
            };
            let mut dirs = vec![(Direction::GToH, &g, &h, out.clone())];
            if both {
                dirs.push((Direction::HToG, &h, &g, out.as_deref().map(reverse_name)));
            }
            let mut summaries = Vec::new();
            for (dir, a, b, csv) in dirs {
                let report: PathDistanceReport = match &csv {
                    Some(p) => directed_path_distance_to_csv(a, b, k, dir, &opts, p, resume)?,
                    None => {
                        let mut r = directed_path_distance(a, b, k, &opts)?;
                        r.direction = dir;
                        r
                    }
                };
                if let Some(p) = &csv {
                    write_json(&p.with_extension("json"), &report.summary())?;
                }
                summaries.push(report.summary());
            }
            if both {
                let d = summaries.iter().map(|s| s.max).fold(0.0, f64::max);
                print_json(&serde_json::json!({ "k": k, "undirected": d, "directed": summaries }))
            } else {
                print_json(&summaries[0])
            }
        }
        Cmd::Signature { pair, k, out, vertex_out, heatmap, geojson, ramp, invert } => {
            let g = load(&pair.from, c.contract)?;
            let h = load(&pair.to, c.contract)?;
            let report = directed_path_distance(&g, &h, k, &options(c))?;
            let (edges, vertices) = report.signatures(&g);
            write_signature_csv(&edges, File::create(&out)?)?;
            if let Some(p) = vertex_out {
                write_signature_csv(&vertices, File::create(p)?)?;
            }
            for p in [heatmap, geojson].into_iter().flatten() {
                export_heatmap(&g, &edges, &p, ramp, invert)?;
            }
            print_json(&report.summary())
        }
        Cmd::Cdf { sig, out, plot } => {
            let map = load_signature_csv(&sig, 0)?;
            let curve = cdf(&map)?;
            curve.write_csv(File::create(&out)?)?;
            if let Some(p) = plot {
                let label = sig.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                export_cdf_plot(std::slice::from_ref(&curve), &[label], &p)?;
            }
            print_json(&serde_json::json!({
                "edges": map.len(),
                "total_length_m": map.total_length(),
                "max_m": map.max_value(),
                "fraction_at_20m": curve.at(20.0),
            }))
        }
        Cmd::Separation { pair, d, radius_steps, out } => {
            let g = load(&pair.from, c.contract)?;
            match d {
                Some(d) => {
                    let rep = separation_report(&g, d, radius_steps);
                    if let Some(p) = out {
                        let mut w = std::io::BufWriter::new(File::create(p)?);
                        writeln!(w, "vertex_id,degree,radius_m")?;
                        for &(id, r) in &rep.per_vertex {
                            let v = g.vertex_idx(id)?;
                            let r = r.map_or_else(|| "inf".to_string(), |r| r.to_string());
                            writeln!(w, "{},{},{}", id.0, g.degree(v), r)?;
                        }
                        w.flush()?;
                    }
                    print_json(&census_json(&[rep]))
                }
                None => {
                    let h = load(&pair.to, c.contract)?;
                    let opts = DistanceOptions { radius_steps, ..options(c) };
                    print_json(&census_json(&separation_census(&g, &h, &opts)?))
                }
            }
        }
        Cmd::Mapmatch { graph, curve } => {
            let h = load(&graph, c.contract)?;
            let curve = load_curve(&curve)?;
            println!("{}", Matcher::new(&h, MatchOptions::default()).distance(&curve, c.tol)?);
            Ok(())
        }
        Cmd::Frechet { a, b } => {
            println!("{}", frechet_distance(&load_curve(&a)?, &load_curve(&b)?, c.tol)?);
            Ok(())
        }
        Cmd::Fscore { pair, interval, match_dist, max_path, out, heatmap } => {
            let g = load(&pair.from, c.contract)?;
            let h = load(&pair.to, c.contract)?;
            let params = FScoreParams { sampling_interval: interval, matched_distance: match_dist, max_path_length: max_path };
            let rep = fscore_signature(&g, &h, &params, c.workers)?;
            write_signature_csv(&rep.edges, File::create(&out)?)?;
            if let Some(p) = heatmap {
                export_heatmap(&g, &rep.edges, &p, Ramp::Linear, true)?;
            }
            println!("{}", rep.global);
            Ok(())
        }
        Cmd::Perturb { p, seeds, rng_seed } => {
            let spec = PerturbationSpec { p, seed_count: seeds, rng_seed, ..Default::default() };
            let graphs = generate_perturbed(&spec)?;
            let dir = c.out_dir.clone().unwrap_or_else(|| PathBuf::from("."));
            save_graph_dir(&base_grid(&spec), &dir.join("base"))?;
            for (i, g) in graphs.iter().enumerate() {
                save_graph_dir(g, &dir.join(format!("seed{i:03}")))?;
            }
            println!("{}", dir.display());
            Ok(())
        }
        Cmd::Study { p_values, seeds, k, rng_seed } => {
            let spec = StudySpec { p_values, seed_count: seeds, k, tolerance: c.tol, rng_seed, workers: c.workers, ..Default::default() };
            let res = run_perturbation_study(&spec)?;
            res.write_rows_csv(File::create(out_path(c, "study_rows.csv")?)?)?;
            res.write_summary_csv(File::create(out_path(c, "study_summary.csv")?)?)?;
            std::fs::write(out_path(c, "study_boxplot.svg")?, res.boxplot_svg())?;
            let mut stdout = std::io::stdout().lock();
            res.write_summary_csv(&mut stdout)?;
            Ok(())
        }
        Cmd::Run { config, set, from, to, k, both, strict } => {
            let mut cfg = match config {
                Some(p) => RunConfig::from_file(&p)?,
                None => RunConfig::default(),
            };
            for kv in &set {
                let (key, value) = kv.split_once('=').ok_or_else(|| Error::Usage(format!("--set expects KEY=VALUE, got {kv:?}")))?;
                cfg.set(key, value)?;
            }
            // Explicit flags win over the file.
            let args: Vec<String> = std::env::args().collect();
            let given = |flag: &str| args.iter().any(|a| a == flag || a.starts_with(&format!("{flag}=")));
            if let Some(p) = from {
                cfg.from = Some(p);
            }
            if let Some(p) = to {
                cfg.to = Some(p);
            }
            if !k.is_empty() {
                cfg.k = k;
            }
            cfg.both |= both;
            cfg.strict |= strict;
            cfg.contract |= c.contract;
            if given("--tol") {
                cfg.tolerance = c.tol;
            }
            if given("--workers") {
                cfg.workers = c.workers;
            }
            if let Some(d) = &c.out_dir {
                cfg.out_dir = d.clone();
            }
            let manifest = run_all(&cfg)?;
            print_json(&manifest.distances)
        }
    }
}

fn census_json(reports: &[pathdist::distance::SeparationReport]) -> serde_json::Value {
    reports
        .iter()
        .map(|r| {
            serde_json::json!({
                "d": r.d,
                "separated": r.separated,
                "separated_degree_not_3": r.separated_degree_not_3,
                "degree_not_3": r.degree_not_3,
                "vertex_count": r.vertex_count,
                "fraction": r.fraction(),
            })
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pathdist: {e}");
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
    }
}

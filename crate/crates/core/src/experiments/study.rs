use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::perturb::{base_grid, generate_perturbed, PerturbationSpec};
use crate::distance::{directed_path_distance, DistanceOptions};
use crate::error::{Error, Result};
use crate::frechet::DEFAULT_TOLERANCE;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudySpec {
    pub p_values: Vec<f64>,
    pub seed_count: usize,
    pub k: usize,
    pub tolerance: f64,
    pub rng_seed: u64,
    pub workers: usize,
    pub extent: f64,
    pub spacing: f64,
}

impl Default for StudySpec {
    fn default() -> Self {
        Self {
            p_values: vec![0.1, 0.3, 0.5, 0.7, 0.9],
            seed_count: 20,
            k: 3,
            tolerance: DEFAULT_TOLERANCE,
            rng_seed: 0,
            workers: 1,
            extent: 10.0,
            spacing: 2.0,
        }
    }
}

impl StudySpec {
    /// Grid spec for the `i`-th p value. Each p gets its own stream:
    /// `rng_seed + i * 0x9E3779B97F4A7C15` (wrapping).
    pub fn perturbation(&self, i: usize) -> PerturbationSpec {
        PerturbationSpec {
            extent: self.extent,
            spacing: self.spacing,
            p: self.p_values[i],
            seed_count: self.seed_count,
            rng_seed: self.rng_seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub p: f64,
    pub seed: usize,
    pub distance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoxStats {
    pub p: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StudyResult {
    pub k: usize,
    pub rows: Vec<StudyRow>,
    pub summary: Vec<BoxStats>,
}

/// Quantile of sorted data with linear interpolation between order
/// statistics.
pub fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

pub fn box_stats(p: f64, values: &[f64]) -> BoxStats {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    BoxStats {
        p,
        min: v.first().copied().unwrap_or(f64::NAN),
        q1: quantile_sorted(&v, 0.25),
        median: quantile_sorted(&v, 0.5),
        q3: quantile_sorted(&v, 0.75),
        max: v.last().copied().unwrap_or(f64::NAN),
    }
}

/// Δk from each perturbed grid back into the unperturbed grid.
pub fn run_perturbation_study(spec: &StudySpec) -> Result<StudyResult> {
    if spec.p_values.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::InvalidInput("p values must lie in [0, 1]".into()));
    }
    let base = base_grid(&PerturbationSpec { extent: spec.extent, spacing: spec.spacing, ..Default::default() });
    let mut jobs = Vec::new();
    for i in 0..spec.p_values.len() {
        for (seed, g) in generate_perturbed(&spec.perturbation(i))?.into_iter().enumerate() {
            jobs.push((spec.p_values[i], seed, g));
        }
    }
    let options = DistanceOptions { tolerance: spec.tolerance, workers: 1, ..Default::default() };
    let pool = DistanceOptions { workers: spec.workers, ..options }.pool()?;
    let rows: Vec<StudyRow> = pool.install(|| {
        jobs.par_iter()
            .map(|(p, seed, g)| {
                let d = directed_path_distance(g, &base, spec.k, &options)?.max;
                Ok(StudyRow { p: *p, seed: *seed, distance: d })
            })
            .collect::<Result<_>>()
    })?;
    let summary = spec
        .p_values
        .iter()
        .map(|&p| {
            let vals: Vec<f64> = rows.iter().filter(|r| r.p == p).map(|r| r.distance).collect();
            box_stats(p, &vals)
        })
        .collect();
    Ok(StudyResult { k: spec.k, rows, summary })
}

impl StudyResult {
    /// `p,seed,distance_m,bound_m` with bound `√2·p`.
    pub fn write_rows_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(w);
        w.write_record(["p", "seed", "distance_m", "bound_m"])?;
        for r in &self.rows {
            w.write_record([r.p.to_string(), r.seed.to_string(), r.distance.to_string(), (2f64.sqrt() * r.p).to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_summary_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(w);
        w.write_record(["p", "min", "q1", "median", "q3", "max"])?;
        for s in &self.summary {
            w.write_record([s.p, s.min, s.q1, s.median, s.q3, s.max].map(|x| x.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    /// Box plot per p with the `√2·p` bound drawn as a dashed line.
    pub fn boxplot_svg(&self) -> String {
        let (w, h) = (640.0, 400.0);
        let (left, right, top, bottom) = (60.0, 20.0, 20.0, 50.0);
        let p_max = self.summary.iter().map(|s| s.p).fold(0.0f64, f64::max).max(1e-9);
        let y_max = self
            .summary
            .iter()
            .map(|s| s.max.max(2f64.sqrt() * s.p))
            .filter(|v| v.is_finite())
            .fold(1e-9f64, f64::max)
            * 1.1;
        let px = |p: f64| left + (p / (p_max * 1.1) + 0.03) * (w - left - right) * 0.94;
        let py = |y: f64| top + (1.0 - y / y_max) * (h - top - bottom);
        let mut s = String::new();
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
        writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
        writeln!(
            s,
            r##"<path d="M{left:.2},{top:.2} L{left:.2},{:.2} L{:.2},{:.2}" fill="none" stroke="#000000"/>"##,
            h - bottom,
            w - right,
            h - bottom
        )
        .unwrap();
        for i in 0..=4 {
            let y = y_max * i as f64 / 4.0;
            writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">{y:.2}</text>"#, left - 6.0, py(y) + 4.0).unwrap();
        }
        writeln!(
            s,
            r##"<path d="M{:.2},{:.2} L{:.2},{:.2}" stroke="#999999" stroke-dasharray="4 3" fill="none"/>"##,
            px(0.0),
            py(0.0),
            px(p_max * 1.1),
            py(2f64.sqrt() * p_max * 1.1)
        )
        .unwrap();
        let half = 12.0;
        for b in &self.summary {
            let x = px(b.p);
            writeln!(
                s,
                r##"<g stroke="#1f77b4" fill="none"><line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}"/><line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}"/><rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="#dbe9f6"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke-width="2"/></g>"##,
                py(b.min),
                py(b.q1),
                py(b.q3),
                py(b.max),
                x - half,
                py(b.q3),
                2.0 * half,
                (py(b.q1) - py(b.q3)).max(0.0),
                x - half,
                py(b.median),
                x + half,
                py(b.median)
            )
            .unwrap();
            writeln!(s, r#"<text x="{x:.2}" y="{:.2}" font-size="11" text-anchor="middle">{}</text>"#, h - bottom + 16.0, b.p).unwrap();
        }
        writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">p</text>"#, (left + w - right) / 2.0, h - 10.0).unwrap();
        writeln!(
            s,
            r#"<text x="14" y="{0:.2}" font-size="12" text-anchor="middle" transform="rotate(-90 14 {0:.2})">distance (m)</text>"#,
            (top + h - bottom) / 2.0
        )
        .unwrap();
        s.push_str("</svg>\n");
        s
    }
}

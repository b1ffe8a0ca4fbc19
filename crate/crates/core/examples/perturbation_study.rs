//! The perturbed-grid experiment: jitter every vertex of a 6 x 6 grid by up
//! to p in each coordinate and measure the distance back to the grid.

use std::fs::File;

use pathdist::experiments::{run_perturbation_study, StudySpec};

fn main() -> pathdist::Result<()> {
    let out = std::env::args().nth(1).map(Into::into).unwrap_or_else(|| std::env::temp_dir().join("pathdist-examples"));
    std::fs::create_dir_all(&out)?;

    let spec = StudySpec { seed_count: 8, k: 2, rng_seed: 2013, workers: 4, ..Default::default() };
    let result = run_perturbation_study(&spec)?;

    println!("   p     min      q1  median      q3     max   √2·p");
    for b in &result.summary {
        println!(
            "{:>4} {:>7.4} {:>7.4} {:>7.4} {:>7.4} {:>7.4} {:>6.4}",
            b.p,
            b.min,
            b.q1,
            b.median,
            b.q3,
            b.max,
            2f64.sqrt() * b.p
        );
    }
    let over = result.rows.iter().filter(|r| r.distance > 2f64.sqrt() * r.p + spec.tolerance).count();
    println!("rows above the displacement bound: {over} of {}", result.rows.len());

    result.write_rows_csv(File::create(out.join("study_rows.csv"))?)?;
    result.write_summary_csv(File::create(out.join("study_summary.csv"))?)?;
    std::fs::write(out.join("study_boxplot.svg"), result.boxplot_svg())?;
    println!("boxplot in {}", out.join("study_boxplot.svg").display());
    Ok(())
}

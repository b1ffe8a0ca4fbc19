//! The perturbed-grid study and the full-run driver.

mod config;
mod perturb;
mod run;
mod study;

pub use config::RunConfig;
pub use perturb::{base_grid, generate_perturbed, PerturbationSpec};
pub use run::{run_all, Manifest};
pub use study::{box_stats, quantile_sorted, run_perturbation_study, BoxStats, StudyResult, StudyRow, StudySpec};

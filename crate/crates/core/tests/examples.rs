//! Runs every program in `examples/`. `cargo test` builds them next to the
//! test binaries.

use std::path::PathBuf;
use std::process::Command;

fn example(name: &str) -> PathBuf {
    let deps = std::env::current_exe().unwrap().parent().unwrap().to_path_buf();
    let exe = deps.parent().unwrap().join("examples").join(format!("{name}{}", std::env::consts::EXE_SUFFIX));
    assert!(exe.exists(), "{} not built", exe.display());
    exe
}

fn run(name: &str) -> (String, PathBuf) {
    let dir = std::env::temp_dir().join(format!("pathdist-example-{name}-{}", std::process::id()));
    std::fs::remove_dir_all(&dir).ok();
    let out = Command::new(example(name)).arg(&dir).output().unwrap();
    assert!(out.status.success(), "{name}: {}", String::from_utf8_lossy(&out.stderr));
    (String::from_utf8(out.stdout).unwrap(), dir)
}

fn done(dir: PathBuf) {
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn frechet() {
    let (out, dir) = run("frechet");
    assert!(out.contains("decision at d + 0.01: true"));
    done(dir);
}

#[test]
fn map_matching() {
    let (out, dir) = run("map_matching");
    assert!(out.contains("exhaustive scan"));
    done(dir);
}

#[test]
fn path_distance() {
    let (out, dir) = run("path_distance");
    assert!(out.contains("wrote 268 rows"));
    assert!(dir.join("grid_k2.csv").exists());
    done(dir);
}

#[test]
fn signatures() {
    let (_, dir) = run("signatures");
    for f in ["signature_k3.csv", "heatmap_k1.svg", "heatmap_k2.geojson", "cdf.svg"] {
        assert!(dir.join(f).exists(), "{f}");
    }
    done(dir);
}

#[test]
fn separation() {
    let (out, dir) = run("separation");
    assert_eq!(out.matches("separated:").count(), 3);
    done(dir);
}

#[test]
fn fscore() {
    let (_, dir) = run("fscore");
    assert!(dir.join("fscore.csv").exists() && dir.join("fscore.svg").exists());
    done(dir);
}

#[test]
fn perturbation_study() {
    let (out, dir) = run("perturbation_study");
    assert!(out.contains("rows above the displacement bound: 0 of 40"));
    assert!(dir.join("study_boxplot.svg").exists());
    done(dir);
}

#[test]
fn full_run() {
    let (_, dir) = run("full_run");
    assert!(dir.join("run/manifest.json").exists());
    done(dir);
}

#[test]
fn graph_io() {
    let (out, dir) = run("graph_io");
    assert!(out.contains("FeatureCollection"));
    done(dir);
}

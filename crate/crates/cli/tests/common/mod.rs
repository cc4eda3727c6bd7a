#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nervekit")).args(args).output().expect("binary runs")
}

/// One invocation per bundled fixture (and the fixture-free affine check), with truncations
/// that keep every run well under a second or two.
pub fn fixture_runs() -> Vec<Vec<String>> {
    let mut runs: Vec<Vec<&str>> = vec![
        vec!["homology", "boundary2.json"],
        vec!["homology", "boundary3.json"],
        vec!["homology", "sd_simplex2.json"],
        vec!["homology", "torus.json"],
        vec!["ex", "boundary2.json", "--trunc", "2"],
        vec!["ex", "sd_simplex2.json", "--trunc", "2"],
        vec!["cech", "interval_cover.json"],
        vec!["cech", "circle_cover.json", "--sections", "witnessed"],
        vec!["whitehead", "interval_cover.json"],
        vec!["whitehead", "circle_cover.json"],
        vec!["whitehead", "sphere_cover.json", "--trunc", "2"],
        vec!["whitehead", "torus_cover.json", "--trunc", "2"],
        vec!["nerve", "walking_iso.json"],
        vec!["nerve", "ordinal2.json"],
        vec!["segal", "walking_iso.json"],
        vec!["segal", "ordinal3.json"],
        vec!["segal", "square.json"],
        vec!["segal", "z2.json"],
        vec!["segal", "boundary2_bisimplicial.json", "--n-max", "2"],
        vec!["bar", "circle_bar.json"],
        vec!["bar", "pushout_bar.json", "--ex", "--trunc", "2"],
        vec!["bar", "weighted_bar.json", "--trunc", "2"],
        vec!["affine-check"],
    ];
    runs.push(vec!["homology", "torus.json", "--format", "text"]);
    runs.into_iter()
        .map(|r| r.into_iter().map(|a| if a.ends_with(".json") { fixture(a) } else { a.to_string() }).collect())
        .collect()
}

/// Every `.json` file in the fixtures directory.
pub fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures())
        .expect("fixtures directory")
        .filter_map(|e| e.ok()?.file_name().into_string().ok())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
}

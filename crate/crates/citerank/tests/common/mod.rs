#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use citerank::chart::{render_chart, Chart, ChartOptions};
use citerank_core::{ccdf_series, CitationHistogram, StepSeries};

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn citerank<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Run {
    let output = Command::new(env!("CARGO_BIN_EXE_citerank"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: output.status.code().expect("exited normally"),
        stdout: String::from_utf8(output.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(output.stderr).expect("utf-8 stderr"),
    }
}

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Writes the synthetic fixture store into `dir` through the CLI.
pub fn fixture_store(dir: &Path) -> PathBuf {
    let store = dir.join("store.json");
    let run = citerank(&[
        "build-ref".as_ref(),
        "--fixtures".as_ref(),
        "--out".as_ref(),
        store.as_os_str(),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    store
}

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Two small log-log citation curves; the first ends in a long gap up to a
/// single paper with 40 citations.
pub fn toy_series() -> Vec<StepSeries> {
    let a = CitationHistogram::from_counts([(0, 4), (1, 3), (2, 2), (5, 1), (40, 1)]);
    let b = CitationHistogram::from_counts([(0, 1), (1, 1), (3, 1), (12, 2)]);
    vec![ccdf_series(&a, "toy A").unwrap(), ccdf_series(&b, "toy B").unwrap()]
}

pub fn toy_chart() -> Chart {
    let options = ChartOptions {
        title: Some("Two toy sets".into()),
        ..ChartOptions::default()
    };
    render_chart(&toy_series(), &options).unwrap()
}

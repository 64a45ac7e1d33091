//! Shared helpers for the CLI test suites.

use std::path::Path;
use std::process::Command;

/// Runs the built binary; returns (exit code, stdout, stderr).
pub fn mmx(dir: &Path, args: &[&str]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_mmx"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs");
    (
        output.status.code().unwrap_or(-1),
        String::from_utf8(output.stdout).expect("utf8 stdout"),
        String::from_utf8(output.stderr).expect("utf8 stderr"),
    )
}

/// Drops the timing line so reports can be compared byte for byte.
pub fn normalize(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.starts_with("time_ms"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> std::path::PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("test file written");
    path
}

/// The six-vertex instance whose parts are joined by pairwise perfect
/// matchings yet contain no triangle.
pub const SIX_VERTEX_PG: &str = "pg 3 6 6\npart 1 1 2\npart 2 3 4\npart 3 5 6\nedge 1 3\nedge 1 6\nedge 2 4\nedge 2 5\nedge 3 5\nedge 4 6\n";

/// One vertex per part, all three edges.
pub const TRIANGLE_PG: &str =
    "pg 3 3 3\npart 1 1\npart 2 2\npart 3 3\nedge 1 2\nedge 1 3\nedge 2 3\n";

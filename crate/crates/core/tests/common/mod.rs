//! CLI cases shared by the golden-file tests and the acceptance suite.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

/// `(golden file stem, arguments, expected exit code)`. Quiver paths are
/// relative to `tests/data`.
pub const CASES: &[(&str, &[&str], i32)] = &[
    ("euler_a2", &["euler", "Q_a2.quiver", "--a", "1,1", "--b", "1,1"], 0),
    ("subdims_a3", &["subdims", "Q_a3.quiver", "--dim", "1,1,1"], 0),
    ("subdims_kron", &["subdims", "Q_kron.quiver", "--dim", "2,2"], 0),
    ("check_sub_yes", &["check-sub", "Q_a2.quiver", "--alpha", "0,1", "--dim", "1,1"], 0),
    ("check_sub_no", &["check-sub", "Q_a2.quiver", "--alpha", "1,0", "--dim", "1,1"], 1),
    ("check_quot_yes", &["check-quot", "Q_a2.quiver", "--dim", "1,1", "--beta", "1,0"], 0),
    ("check_quot_no", &["check-quot", "Q_a2.quiver", "--dim", "1,1", "--beta", "0,1"], 1),
    ("cone_member", &["cone", "Q_a2.quiver", "--dim", "1,1", "--weight", "1,-1"], 0),
    ("cone_violated", &["cone", "Q_a2.quiver", "--dim", "1,1", "--weight", "-1,1"], 1),
    ("cone_equality", &["cone", "Q_theta.quiver", "--dim", "1,1,1", "--weight", "1,0,0"], 1),
    ("witness_kron", &["witness", "Q_kron.quiver", "--dim", "1,1", "--weight", "1,-1", "--seed", "7"], 0),
    ("witness_a2", &["witness", "Q_a2.quiver", "--dim", "1,1", "--weight", "1,-1"], 0),
    ("witness_theta", &["witness", "Q_theta.quiver", "--dim", "2,1,2", "--weight", "1,0,-1", "--seed", "3"], 0),
    ("witness_rejected", &["witness", "Q_a2.quiver", "--dim", "1,1", "--weight", "-1,1"], 1),
    ("semiinv_nonzero", &["semiinv", "Q_kron.quiver", "--A", "1,1", "--B", "1,1"], 0),
    ("semiinv_zero", &["semiinv", "Q_a2.quiver", "--A", "2,1", "--B", "1,2"], 1),
    ("oracle_sub_kron", &["oracle-sub", "Q_kron.quiver", "--alpha", "1,1", "--dim", "2,2"], 0),
    ("oracle_sub_a2", &["oracle-sub", "Q_a2.quiver", "--alpha", "1,0", "--dim", "1,1", "--degree", "1"], 1),
    ("hull_theta", &["hull", "Q_theta.quiver", "--dim", "1,1,1"], 0),
    ("hull_a3", &["hull", "Q_a3.quiver", "--dim", "2,2,2"], 0),
    ("lr_positive", &["lr", "--lam", "2,1", "--mu", "2,1", "--nu", "3,2,1", "--saturation", "3"], 0),
    ("lr_zero", &["lr", "--lam", "2", "--mu", "1", "--nu", "1,1,1"], 1),
    ("json_cone", &["--format", "json-lines", "cone", "Q_a2.quiver", "--dim", "1,1", "--weight", "-1,1"], 1),
    ("json_witness", &["witness", "Q_kron.quiver", "--dim", "1,1", "--weight", "1,-1", "--format", "json-lines"], 0),
    ("error_length", &["cone", "Q_a2.quiver", "--dim", "1,1,1", "--weight", "1,-1"], 2),
    ("error_missing", &["euler", "missing.quiver", "--a", "1", "--b", "1"], 2),
    ("error_command", &["bogus"], 2),
];

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs the installed binary; returns `(exit code, stdout, stderr)`.
pub fn run_binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_quiversat"))
        .args(args)
        .current_dir(data_dir())
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

/// The golden text of a run: exit code, then stdout, then stderr.
pub fn transcript(args: &[&str]) -> String {
    let (code, stdout, stderr) = run_binary(args);
    format!("exit = {code}\n--- stdout\n{stdout}--- stderr\n{stderr}")
}

/// Compares every case with its golden file; with `QUIVERSAT_BLESS` set the
/// files are rewritten instead. Returns the mismatching stems.
pub fn check_golden() -> Vec<String> {
    let bless = std::env::var_os("QUIVERSAT_BLESS").is_some();
    let mut bad = Vec::new();
    for (stem, args, code) in CASES {
        let text = transcript(args);
        let path = golden_dir().join(format!("{stem}.txt"));
        if bless {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_default();
        if text != expected || !text.starts_with(&format!("exit = {code}\n")) {
            bad.push(stem.to_string());
        }
    }
    bad
}

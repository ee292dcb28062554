#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: String,
    pub exit: i32,
    pub args: Vec<String>,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

pub fn cases() -> Vec<Case> {
    let dir = golden_dir();
    let text = std::fs::read_to_string(dir.join("cases.txt")).expect("cases.txt");
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut parts = l.split_whitespace();
            let name = parts.next().unwrap().to_string();
            let exit = parts.next().unwrap().parse().unwrap();
            let args = parts
                .flat_map(|a| match a.strip_prefix('@') {
                    Some(file) => vec!["--input".to_string(), dir.join(file).display().to_string()],
                    None => vec![a.to_string()],
                })
                .collect();
            Case { name, exit, args }
        })
        .collect()
}

/// Runs the binary in machine mode; returns stdout and the exit code.
pub fn run_machine(args: &[String]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_mmpkit"))
        .args(args)
        .args(["--format", "machine"])
        .output()
        .expect("binary runs");
    assert!(
        out.stderr.is_empty(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().expect("exit code"),
    )
}

pub fn expected_path(name: &str) -> PathBuf {
    golden_dir().join("expected").join(format!("{name}.json"))
}

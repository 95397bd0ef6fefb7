#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .canonicalize()
        .unwrap()
}

pub fn data(name: &str) -> PathBuf {
    data_dir().join(name)
}

/// Runs the binary; returns (exit code, stdout, stderr).
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let Output { status, stdout, stderr } = Command::new(env!("CARGO_BIN_EXE_quietvoyage"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        status.code().expect("exited normally"),
        String::from_utf8_lossy(&stdout).into_owned(),
        String::from_utf8_lossy(&stderr).into_owned(),
    )
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// A bundled scenario as JSON with every table path made absolute, so it can
/// be edited and written elsewhere.
pub fn scenario_json(name: &str) -> serde_json::Value {
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
    fn absolutize(v: &mut serde_json::Value) {
        match v {
            serde_json::Value::Object(m) => {
                for (k, x) in m.iter_mut() {
                    if k == "csv" {
                        if let Some(p) = x.as_str() {
                            *x = serde_json::Value::String(data(p).to_string_lossy().into_owned());
                        }
                    } else {
                        absolutize(x);
                    }
                }
            }
            serde_json::Value::Array(a) => a.iter_mut().for_each(absolutize),
            _ => {}
        }
    }
    absolutize(&mut v);
    v
}

pub fn write_json(dir: &Path, name: &str, v: &serde_json::Value) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p
}

pub const RESULT_TABLES: [&str; 4] = [
    "pareto.csv",
    "speed_profile.csv",
    "noise_breakdown.csv",
    "hypervolume.csv",
];

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden").join(name)
}

pub fn fprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fprod"))
        .args(args)
        .env_remove("FPROD_MAX_PRODUCT")
        .output()
        .expect("the fprod binary runs")
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Report JSON with the timing field removed.
pub fn stable_json(text: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(text).expect("report is JSON");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timing");
    }
    serde_json::to_string_pretty(&v).unwrap() + "\n"
}

/// Compare against a golden file; `UPDATE_GOLDEN=1` rewrites it instead.
pub fn matches_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = golden(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        Err(format!("output differs from {}", path.display()))
    }
}

pub fn code(o: &Output) -> i32 {
    o.status.code().unwrap_or(-1)
}

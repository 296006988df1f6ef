//! Shared fixture loading for integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use cpforge::cp::{parse_cp, CreasePattern};
use serde_json::Value;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

pub fn read(rel: &str) -> String {
    fs::read_to_string(fixture_dir().join(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

pub fn load(rel: &str) -> CreasePattern {
    parse_cp(&read(rel)).unwrap_or_else(|e| panic!("{rel}: {e}"))
}

/// Fixture path → manifest entry.
pub fn manifest() -> BTreeMap<String, Value> {
    serde_json::from_str(&read("manifest.json")).expect("manifest parses")
}

pub fn golden() -> Vec<(String, CreasePattern)> {
    manifest()
        .into_iter()
        .filter(|(k, v)| k.starts_with("golden/") && v["expect"] == "ok")
        .map(|(k, _)| {
            let cp = load(&k);
            (k, cp)
        })
        .collect()
}

/// Error fixtures with their expected code and optional layer cap.
pub fn error_cases() -> Vec<(String, String, Option<usize>)> {
    manifest()
        .into_iter()
        .filter(|(k, _)| k.starts_with("errors/"))
        .map(|(k, v)| {
            let code = v["expect"].as_str().unwrap().to_owned();
            let cap = v.get("layer_cap").and_then(Value::as_u64).map(|c| c as usize);
            (k, code, cap)
        })
        .collect()
}

//! Run manifests. The manifest (with wall-clock) goes to stderr as one JSON
//! line; reports stay deterministic so that replaying a manifest reproduces
//! them byte for byte.

use serde::Serialize;

#[derive(Serialize)]
struct RunManifest {
    schema_version: u32,
    tool_version: &'static str,
    argv: Vec<String>,
    wall_ms: u128,
}

pub fn log_manifest(elapsed: std::time::Duration) {
    let manifest = RunManifest {
        schema_version: 1,
        tool_version: env!("CARGO_PKG_VERSION"),
        argv: std::env::args().collect(),
        wall_ms: elapsed.as_millis(),
    };
    if let Ok(line) = serde_json::to_string(&manifest) {
        eprintln!("{line}");
    }
}

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

/// Everything needed to reproduce a run: the command path and its resolved flags.
#[derive(Serialize)]
pub struct ExperimentSpec<'a, A: Serialize> {
    pub command: &'a str,
    pub args: &'a A,
}

#[derive(Serialize)]
struct Envelope<'a, A: Serialize, R: Serialize> {
    tool: &'static str,
    version: &'static str,
    spec: ExperimentSpec<'a, A>,
    seeds: BTreeMap<&'a str, u64>,
    result: &'a R,
}

/// Writes a JSON report atomically. Reports carry no timestamps, so equal
/// inputs produce byte-identical files.
pub fn write<A: Serialize, R: Serialize>(
    path: &Path,
    command: &str,
    args: &A,
    seeds: &[(&str, u64)],
    result: &R,
) -> Result<()> {
    let envelope = Envelope {
        tool: "simplegrp",
        version: env!("CARGO_PKG_VERSION"),
        spec: ExperimentSpec { command, args },
        seeds: seeds.iter().copied().collect(),
        result,
    };
    let mut body = serde_json::to_string_pretty(&envelope)?;
    body.push('\n');
    write_text(path, &body)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    simplegrp::dataset::write_atomic(path, text.as_bytes())
        .with_context(|| format!("cannot write {}", path.display()))
}

/// Optional report; skipped when no path was given.
pub fn maybe_write<A: Serialize, R: Serialize>(
    path: Option<&Path>,
    command: &str,
    args: &A,
    seeds: &[(&str, u64)],
    result: &R,
) -> Result<()> {
    match path {
        Some(p) => write(p, command, args, seeds, result),
        None => Ok(()),
    }
}

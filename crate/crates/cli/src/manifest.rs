//! Run manifests: resolved settings, input digests and tool version, written
//! next to a command's outputs. No timestamps, so identical runs produce
//! identical manifests.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{ArgMatches, Command};
use serde_json::json;
use sha2::{Digest, Sha256};

/// Hex sha256 of a file, or of a directory's files in name order (each
/// contributing its name and its own digest).
pub fn digest(path: &Path) -> Result<String> {
    let meta = fs::metadata(path).with_context(|| format!("{}", path.display()))?;
    if meta.is_dir() {
        let mut names: Vec<PathBuf> = fs::read_dir(path)
            .with_context(|| format!("{}", path.display()))?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()
            .with_context(|| format!("{}", path.display()))?;
        names.sort();
        let mut h = Sha256::new();
        for p in names.iter().filter(|p| p.is_file()) {
            h.update(p.file_name().unwrap_or_default().to_string_lossy().as_bytes());
            h.update([0]);
            h.update(digest(p)?.as_bytes());
            h.update(b"\n");
        }
        Ok(hex::encode(h.finalize()))
    } else {
        let bytes = fs::read(path).with_context(|| format!("{}", path.display()))?;
        Ok(hex::encode(Sha256::digest(&bytes)))
    }
}

/// Every argument of the subcommand as its raw string value(s), keyed by
/// long flag name, defaults included. Absent optional arguments are left out.
pub fn resolved_settings(cmd: &Command, matches: &ArgMatches) -> BTreeMap<String, serde_json::Value> {
    let mut out = BTreeMap::new();
    for arg in cmd.get_arguments() {
        let Some(long) = arg.get_long() else { continue };
        if matches!(long, "config" | "help" | "version") {
            continue;
        }
        let Ok(Some(raw)) = matches.try_get_raw(arg.get_id().as_str()) else {
            continue;
        };
        let values: Vec<String> = raw.map(|v| v.to_string_lossy().into_owned()).collect();
        let value = match values.as_slice() {
            [one] => json!(one),
            many => json!(many),
        };
        out.insert(long.to_string(), value);
    }
    out
}

pub struct Manifest<'a> {
    pub command: &'a str,
    pub settings: BTreeMap<String, serde_json::Value>,
    pub inputs: Vec<PathBuf>,
}

impl Manifest<'_> {
    pub fn write(&self, path: &Path) -> Result<()> {
        let mut inputs = BTreeMap::new();
        for p in &self.inputs {
            inputs.insert(p.display().to_string(), digest(p)?);
        }
        let body = json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "settings": self.settings,
            "inputs": inputs,
        });
        let text = serde_json::to_string_pretty(&body)? + "\n";
        fs::write(path, text).with_context(|| format!("{}", path.display()))
    }
}

/// `<file>.manifest.json` beside a file output, `run.manifest.json` inside a
/// directory output.
pub fn path_for(output: &Path) -> PathBuf {
    if output.is_dir() {
        output.join("run.manifest.json")
    } else {
        let mut name = output.file_name().unwrap_or_default().to_os_string();
        name.push(".manifest.json");
        output.with_file_name(name)
    }
}

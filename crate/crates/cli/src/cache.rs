//! On-disk memo of exceptional-tree nodes.
//!
//! The file is `{"version": 1, "entries": [{"address": [p, q], "chern": [r, c1, c2]}, ...]}`.
//! Nothing in it is trusted: entries are rebuilt from their Chern data and the
//! tree revalidates each one against its parents, dropping the rest.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use moduli_core::exceptional::Dyadic;
use moduli_core::{ExceptionalBundle, ExceptionalTree};
use serde_json::{json, Value};

use crate::json as encode;

pub const VERSION: u64 = 1;
pub const ENV_VAR: &str = "MODULI_CACHE";

/// `$MODULI_CACHE`, else `$XDG_CACHE_HOME/moduli/exceptional-tree.json`, else
/// the same under `~/.cache`.
pub fn default_path() -> Option<PathBuf> {
    if let Some(p) = std::env::var_os(ENV_VAR).filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|p| !p.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("moduli").join("exceptional-tree.json"))
}

fn entry(v: &Value) -> Option<ExceptionalBundle> {
    let addr = v.get("address")?.as_array()?;
    let num = addr.first()?.as_i64()?;
    let exp = u32::try_from(addr.get(1)?.as_u64()?).ok()?;
    let mut b = ExceptionalBundle::from_chern(&encode::chern_from(v.get("chern")?).ok()?).ok()?;
    b.address = Some(Dyadic::new(num, exp));
    Some(b)
}

/// Parses cache text into candidate entries; a wrong version or malformed
/// document yields nothing, malformed entries are skipped.
pub fn parse(text: &str) -> Vec<ExceptionalBundle> {
    let Ok(doc) = serde_json::from_str::<Value>(text) else {
        return Vec::new();
    };
    if doc.get("version").and_then(Value::as_u64) != Some(VERSION) {
        return Vec::new();
    }
    doc.get("entries")
        .and_then(Value::as_array)
        .map(|es| es.iter().filter_map(entry).collect())
        .unwrap_or_default()
}

pub fn render(tree: &ExceptionalTree) -> String {
    let entries: Vec<Value> = tree
        .export()
        .iter()
        .filter_map(|b| {
            let a = b.address?;
            Some(json!({ "address": [a.num, a.exp], "chern": encode::chern(&b.chern) }))
        })
        .collect();
    json!({ "version": VERSION, "entries": entries }).to_string()
}

/// Loads `path` into `tree`; returns how many entries survived validation.
pub fn load(tree: &ExceptionalTree, path: &Path) -> usize {
    match fs::read_to_string(path) {
        Ok(text) => tree.import(parse(&text)),
        Err(_) => 0,
    }
}

/// Writes the tree through a temporary file so readers never see a torn file.
pub fn store(tree: &ExceptionalTree, path: &Path) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, render(tree))?;
    fs::rename(&tmp, path)
}

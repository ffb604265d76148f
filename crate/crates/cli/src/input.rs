//! Loading parameter files, directories of them, sign tables and bindings.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use aparam_core::chars::SignTable;
use aparam_core::globlfun::Bindings;
use aparam_core::io::ParamFile;
use aparam_core::{AParam, Parity, SymbolTable};

/// A parameter together with the name it is reported under.
pub struct Named {
    pub name: String,
    pub param: AParam,
}

pub fn parse_parity(text: &str) -> std::result::Result<Parity, String> {
    serde_json::from_value(serde_json::Value::String(text.to_string())).map_err(|_| format!("unknown parity `{text}`"))
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

pub fn symbol_table(path: Option<&Path>) -> Result<SymbolTable> {
    match path {
        Some(p) => Ok(SymbolTable::from_json(&read(p)?).with_context(|| format!("in {}", p.display()))?),
        None => Ok(SymbolTable::default()),
    }
}

pub fn sign_table(path: Option<&Path>) -> Result<SignTable> {
    match path {
        Some(p) => Ok(SignTable::from_json(&read(p)?).with_context(|| format!("in {}", p.display()))?),
        None => Ok(SignTable::new()),
    }
}

pub fn bindings(path: &Path) -> Result<Bindings> {
    Bindings::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))
}

pub fn load_file(path: &Path, symbols: &SymbolTable) -> Result<AParam> {
    let file = ParamFile::from_json(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    let (param, _) = file.resolve(symbols).with_context(|| format!("in {}", path.display()))?;
    Ok(param)
}

/// One file, or every `*.json` file of a directory in name order.
pub fn load_many(path: &Path, symbols: &SymbolTable) -> Result<Vec<Named>> {
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut v: Vec<PathBuf> = fs::read_dir(path)
            .with_context(|| format!("listing {}", path.display()))?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        v.retain(|p| p.extension().is_some_and(|e| e == "json"));
        v.sort();
        if v.is_empty() {
            bail!("no .json files in {}", path.display());
        }
        v
    } else {
        vec![path.to_path_buf()]
    };
    files
        .iter()
        .map(|f| {
            let name = f.file_name().map_or_else(|| f.display().to_string(), |n| n.to_string_lossy().into_owned());
            Ok(Named { name, param: load_file(f, symbols)? })
        })
        .collect()
}

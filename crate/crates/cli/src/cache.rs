//! Content-addressed result cache: one JSON file per problem, keyed by the
//! digest of the canonical problem serialization plus the engine version.
//! Writes are atomic (temp file + rename), so readers never observe a
//! partially written entry; a corrupt entry is treated as a miss with a
//! warning, never as data.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use logct_core::exact::Rat;
use logct_core::{TPoly, Value, ENGINE_VERSION};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct Entry {
    problem: String,
    value: StoredValue,
    engine_version: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum StoredValue {
    Rat { value: String },
    Poly { coeffs: Vec<String> },
}

fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = s.split_once('/')?;
    Some(Rat::new(n.parse().ok()?, d.parse().ok()?))
}

fn encode(v: &Value) -> StoredValue {
    match v {
        Value::Rat(r) => StoredValue::Rat {
            value: crate::report::rat_str(r),
        },
        Value::Poly(p) => StoredValue::Poly {
            coeffs: p.coeffs().iter().map(crate::report::rat_str).collect(),
        },
    }
}

fn decode(v: &StoredValue) -> Option<Value> {
    match v {
        StoredValue::Rat { value } => Some(Value::Rat(parse_rat(value)?)),
        StoredValue::Poly { coeffs } => {
            let cs: Option<Vec<Rat>> = coeffs.iter().map(|s| parse_rat(s)).collect();
            Some(Value::Poly(TPoly::from_coeffs(cs?)))
        }
    }
}

fn entry_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{}.json", key))
}

pub fn lookup(dir: &Path, key: &str) -> Option<Value> {
    let path = entry_path(dir, key);
    let bytes = fs::read(&path).ok()?;
    let parsed: Result<Entry, _> = serde_json::from_slice(&bytes);
    match parsed {
        Ok(e) if e.engine_version == ENGINE_VERSION => match decode(&e.value) {
            Some(v) => Some(v),
            None => {
                eprintln!(
                    "warning: cache entry {} has unparseable value, ignoring",
                    path.display()
                );
                None
            }
        },
        Ok(_) => None, // stale engine version
        Err(err) => {
            eprintln!(
                "warning: corrupt cache entry {} ({}), ignoring",
                path.display(),
                err
            );
            None
        }
    }
}

pub fn store(dir: &Path, key: &str, problem: &str, value: &Value) {
    if let Err(err) = try_store(dir, key, problem, value) {
        eprintln!("warning: could not write cache entry {}: {}", key, err);
    }
}

fn try_store(dir: &Path, key: &str, problem: &str, value: &Value) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let entry = Entry {
        problem: problem.to_string(),
        value: encode(value),
        engine_version: ENGINE_VERSION.to_string(),
    };
    let body = serde_json::to_vec_pretty(&entry).expect("cache entry serializes");
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(&body)?;
    tmp.flush()?;
    tmp.persist(entry_path(dir, key))
        .map_err(|e| e.error)?;
    Ok(())
}

//! Append-only JSON-lines result cache.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub digest: String,
    pub mode: String,
    pub value: Option<usize>,
    pub lo: usize,
    pub hi: Option<usize>,
    pub witness: Option<String>,
    pub version: String,
    pub timestamp: u64,
    /// Fields written by other versions, kept verbatim.
    #[serde(flatten)]
    pub extra: BTreeMap<String, serde_json::Value>,
}

impl CacheEntry {
    pub fn new(key: &str, mode: &str, value: Option<usize>, lo: usize, hi: Option<usize>, witness: Option<String>) -> Self {
        CacheEntry {
            key: key.to_string(),
            digest: key_digest(key),
            mode: mode.to_string(),
            value,
            lo,
            hi,
            witness,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
            extra: BTreeMap::new(),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.value.is_some()
    }
}

pub fn key_digest(key: &str) -> String {
    Sha256::digest(key.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    entries: Vec<CacheEntry>,
}

impl Cache {
    /// Loads the cache; a missing file is an empty cache.
    pub fn open(path: &Path) -> Result<Cache> {
        let mut entries = Vec::new();
        if path.exists() {
            let file = File::open(path)?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let e: CacheEntry = serde_json::from_str(&line).map_err(|e| Error::CacheCorrupt {
                    line: i + 1,
                    msg: e.to_string(),
                })?;
                if e.digest != key_digest(&e.key) {
                    return Err(Error::CacheCorrupt {
                        line: i + 1,
                        msg: "digest does not match key".into(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(Cache {
            path: path.to_path_buf(),
            entries,
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn entries(&self) -> &[CacheEntry] {
        &self.entries
    }

    /// Latest entry for `key` in `mode`.
    pub fn lookup(&self, key: &str, mode: &str) -> Option<&CacheEntry> {
        let d = key_digest(key);
        self.entries.iter().rev().find(|e| e.digest == d && e.mode == mode)
    }

    /// Appends one line under an exclusive lock.
    pub fn append(&mut self, entry: CacheEntry) -> Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.lock()?;
        let line = serde_json::to_string(&entry).map_err(|e| Error::Io(e.to_string()))?;
        let res = writeln!(file, "{line}");
        file.unlock()?;
        res?;
        self.entries.push(entry);
        Ok(())
    }
}

/// Exact hits are returned without running `compute` unless `recheck` is
/// set, in which case a different recomputed value is a defect. Misses and
/// brackets are computed and appended when the result differs.
pub fn lookup_or_compute<F>(cache: &mut Cache, key: &str, mode: &str, recheck: bool, compute: F) -> Result<(CacheEntry, bool)>
where
    F: FnOnce() -> Result<CacheEntry>,
{
    let cached = cache.lookup(key, mode).cloned();
    if let Some(c) = &cached {
        if c.is_exact() && !recheck {
            return Ok((c.clone(), true));
        }
    }
    let fresh = compute()?;
    if let Some(c) = &cached {
        if c.is_exact() {
            if fresh.is_exact() && fresh.value != c.value {
                return Err(Error::CacheMismatch {
                    key: key.to_string(),
                    cached: format!("{:?}", c.value.unwrap()),
                    recomputed: format!("{:?}", fresh.value.unwrap()),
                });
            }
            return Ok((c.clone(), true));
        }
        if fresh.lo == c.lo && fresh.hi == c.hi && fresh.value == c.value {
            return Ok((fresh, false));
        }
    }
    cache.append(fresh.clone())?;
    Ok((fresh, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(v: Option<usize>) -> CacheEntry {
        CacheEntry::new("r(K3)", "ramsey", v, v.unwrap_or(5), v, None)
    }

    #[test]
    fn miss_then_hit() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.jsonl");
        let mut c = Cache::open(&p).unwrap();
        let (e, hit) = lookup_or_compute(&mut c, "r(K3)", "ramsey", false, || Ok(entry(Some(6)))).unwrap();
        assert!(!hit);
        assert_eq!(e.value, Some(6));
        let mut c = Cache::open(&p).unwrap();
        let (e, hit) = lookup_or_compute(&mut c, "r(K3)", "ramsey", false, || panic!("no recompute")).unwrap();
        assert!(hit);
        assert_eq!(e.value, Some(6));
        assert_eq!(c.entries().len(), 1);
    }

    #[test]
    fn tampered_value_is_a_defect() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.jsonl");
        let mut c = Cache::open(&p).unwrap();
        c.append(entry(Some(7))).unwrap();
        let err = lookup_or_compute(&mut c, "r(K3)", "ramsey", true, || Ok(entry(Some(6)))).unwrap_err();
        assert!(matches!(err, Error::CacheMismatch { .. }));
    }

    #[test]
    fn bracket_is_tightened() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.jsonl");
        let mut c = Cache::open(&p).unwrap();
        c.append(entry(None)).unwrap();
        let (e, hit) = lookup_or_compute(&mut c, "r(K3)", "ramsey", false, || Ok(entry(Some(6)))).unwrap();
        assert!(!hit);
        assert_eq!(e.value, Some(6));
        assert_eq!(Cache::open(&p).unwrap().lookup("r(K3)", "ramsey").unwrap().value, Some(6));
    }

    #[test]
    fn corrupt_line_reported() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.jsonl");
        let good = serde_json::to_string(&entry(Some(6))).unwrap();
        std::fs::write(&p, format!("{good}\nnot json\n")).unwrap();
        assert!(matches!(Cache::open(&p), Err(Error::CacheCorrupt { line: 2, .. })));
    }

    #[test]
    fn unknown_fields_survive() {
        let mut v = serde_json::to_value(entry(Some(6))).unwrap();
        v["note"] = serde_json::json!("kept");
        let e: CacheEntry = serde_json::from_value(v).unwrap();
        assert_eq!(serde_json::to_value(&e).unwrap()["note"], "kept");
    }
}

//! On-disk caches for character tables and plethysm expansions.
//!
//! Each entry is one file:
//!
//! ```text
//! gctlab-cache 1 <kind> <key> sha256:<hex of body>
//! <JSON body>
//! ```
//!
//! A file that fails any check (header, checksum, JSON, table invariants) is
//! rebuilt and overwritten. Writes go through a temporary file in the same
//! directory followed by a rename. Builders of the same key are serialized;
//! the first one builds, the others wait and reuse its result.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use gctlab_core::plethysm::{plethysm_sym_sym, SchurExpansion};
use gctlab_core::schar::{character_row, TABLE_CEILING};
use gctlab_core::{CharacterSource, CharacterTable, ClassInfo, Error, Partition, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &str = "gctlab-cache";
pub const CACHE_ENV: &str = "GCTLAB_CACHE_DIR";

/// `GCTLAB_CACHE_DIR`, then `$XDG_CACHE_HOME/gctlab`, then `$HOME/.cache/gctlab`.
pub fn default_cache_dir() -> Option<PathBuf> {
    let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    env(CACHE_ENV)
        .or_else(|| env("XDG_CACHE_HOME").map(|p| p.join("gctlab")))
        .or_else(|| env("HOME").map(|p| p.join(".cache").join("gctlab")))
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    n: usize,
    classes: Vec<Partition>,
    class_sizes: Vec<u64>,
    values: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct PlethysmFile {
    d: usize,
    m: usize,
    entries: Vec<(Partition, u64)>,
}

fn checksum(body: &[u8]) -> String {
    let digest = Sha256::digest(body);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn encode(kind: &str, key: &str, body: &[u8]) -> Vec<u8> {
    let mut out = format!("{MAGIC} {CACHE_VERSION} {kind} {key} sha256:{}\n", checksum(body)).into_bytes();
    out.extend_from_slice(body);
    out
}

/// Body of a well-formed file, or `None` if anything is off.
fn decode<'a>(kind: &str, key: &str, bytes: &'a [u8]) -> Option<&'a [u8]> {
    let nl = bytes.iter().position(|&b| b == b'\n')?;
    let header = std::str::from_utf8(&bytes[..nl]).ok()?;
    let body = &bytes[nl + 1..];
    let fields: Vec<&str> = header.split(' ').collect();
    let version = CACHE_VERSION.to_string();
    let sum = format!("sha256:{}", checksum(body));
    (fields == [MAGIC, version.as_str(), kind, key, sum.as_str()]).then_some(body)
}

type Slot<T> = Arc<Mutex<Option<Arc<T>>>>;

/// Memoising [`CharacterSource`] backed by the on-disk cache.
///
/// Shapes of size at most `max_n` are served from whole character tables;
/// larger ones (up to the oracle ceiling) are computed row by row and kept
/// in memory only.
pub struct CachedCharacters {
    dir: Option<PathBuf>,
    max_n: usize,
    tables: Mutex<BTreeMap<usize, Slot<CharacterTable>>>,
    plethysms: Mutex<BTreeMap<(usize, usize), Slot<SchurExpansion>>>,
    classes: Mutex<BTreeMap<usize, Arc<ClassInfo>>>,
    rows: Mutex<BTreeMap<Partition, Arc<[i64]>>>,
    disk_hits: AtomicU64,
    rebuilt: AtomicU64,
}

impl CachedCharacters {
    /// `dir = None` keeps everything in memory.
    pub fn new(dir: Option<PathBuf>, max_n: usize) -> Self {
        CachedCharacters {
            dir,
            max_n: max_n.min(TABLE_CEILING),
            tables: Mutex::default(),
            plethysms: Mutex::default(),
            classes: Mutex::default(),
            rows: Mutex::default(),
            disk_hits: AtomicU64::new(0),
            rebuilt: AtomicU64::new(0),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// Entries loaded from disk instead of being built.
    pub fn cache_hits(&self) -> u64 {
        self.disk_hits.load(Ordering::Relaxed)
    }

    /// Files that were present but unreadable and got rebuilt.
    pub fn rebuilt(&self) -> u64 {
        self.rebuilt.load(Ordering::Relaxed)
    }

    pub fn table_path(&self, n: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("chartable-n{n}.json")))
    }

    pub fn plethysm_path(&self, d: usize, m: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|dir| dir.join(format!("plethysm-d{d}-m{m}.json")))
    }

    fn read(&self, path: Option<&Path>, kind: &str, key: &str) -> Option<Vec<u8>> {
        let path = path?;
        let bytes = fs::read(path).ok()?;
        match decode(kind, key, &bytes) {
            Some(body) => Some(body.to_vec()),
            None => {
                self.rebuilt.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    fn write(&self, path: Option<&Path>, kind: &str, key: &str, body: &[u8]) {
        let Some(path) = path else { return };
        let Some(parent) = path.parent() else { return };
        let attempt = || -> std::io::Result<()> {
            fs::create_dir_all(parent)?;
            let mut tmp = tempfile::NamedTempFile::new_in(parent)?;
            tmp.write_all(&encode(kind, key, body))?;
            tmp.as_file().sync_all()?;
            tmp.persist(path).map_err(|e| e.error)?;
            Ok(())
        };
        if let Err(e) = attempt() {
            eprintln!("warning: could not write cache file {}: {e}", path.display());
        }
    }

    fn load_table(&self, n: usize) -> Option<CharacterTable> {
        let key = format!("n{n}");
        let body = self.read(self.table_path(n).as_deref(), "chartable", &key)?;
        let parsed: Option<CharacterTable> = serde_json::from_slice::<TableFile>(&body)
            .ok()
            .filter(|f| f.n == n)
            .and_then(|f| CharacterTable::from_parts(f.n, f.classes, f.class_sizes, f.values).ok());
        if parsed.is_none() {
            self.rebuilt.fetch_add(1, Ordering::Relaxed);
        }
        parsed
    }

    /// Character table of `S_n`, from memory, disk, or built and stored.
    pub fn table(&self, n: usize) -> Result<Arc<CharacterTable>> {
        if n > self.max_n {
            return Err(Error::ResourceLimit {
                what: "character table degree",
                value: n,
                limit: self.max_n,
            });
        }
        let slot = self.tables.lock().expect("table map poisoned").entry(n).or_default().clone();
        let mut guard = slot.lock().expect("table slot poisoned");
        if let Some(t) = guard.as_ref() {
            return Ok(t.clone());
        }
        let table = match self.load_table(n) {
            Some(t) => {
                self.disk_hits.fetch_add(1, Ordering::Relaxed);
                t
            }
            None => {
                let t = CharacterTable::build(n)?;
                let file = TableFile {
                    n,
                    classes: t.classes().to_vec(),
                    class_sizes: t.class_sizes().to_vec(),
                    values: t.values().to_vec(),
                };
                let body = serde_json::to_vec(&file).expect("table serializes");
                self.write(self.table_path(n).as_deref(), "chartable", &format!("n{n}"), &body);
                t
            }
        };
        let table = Arc::new(table);
        *guard = Some(table.clone());
        Ok(table)
    }

    fn load_plethysm(&self, d: usize, m: usize) -> Option<SchurExpansion> {
        let key = format!("d{d}-m{m}");
        let body = self.read(self.plethysm_path(d, m).as_deref(), "plethysm", &key)?;
        let parsed = serde_json::from_slice::<PlethysmFile>(&body)
            .ok()
            .filter(|f| f.d == d && f.m == m && f.entries.iter().all(|(p, c)| p.size() == d * m && *c > 0))
            .map(|f| SchurExpansion::from_entries(f.entries));
        if parsed.is_none() {
            self.rebuilt.fetch_add(1, Ordering::Relaxed);
        }
        parsed
    }

    /// Schur expansion of `Sym^d(Sym^m)`, cached by `(d, m)`.
    pub fn plethysm(&self, d: usize, m: usize) -> Result<Arc<SchurExpansion>> {
        let slot = self
            .plethysms
            .lock()
            .expect("plethysm map poisoned")
            .entry((d, m))
            .or_default()
            .clone();
        let mut guard = slot.lock().expect("plethysm slot poisoned");
        if let Some(e) = guard.as_ref() {
            return Ok(e.clone());
        }
        let expansion = match self.load_plethysm(d, m) {
            Some(e) => {
                self.disk_hits.fetch_add(1, Ordering::Relaxed);
                e
            }
            None => {
                let e = plethysm_sym_sym(self, d, m)?;
                let file = PlethysmFile {
                    d,
                    m,
                    entries: e.iter().map(|(p, c)| (p.clone(), c)).collect(),
                };
                let body = serde_json::to_vec(&file).expect("plethysm serializes");
                self.write(self.plethysm_path(d, m).as_deref(), "plethysm", &format!("d{d}-m{m}"), &body);
                e
            }
        };
        let expansion = Arc::new(expansion);
        *guard = Some(expansion.clone());
        Ok(expansion)
    }
}

impl CharacterSource for CachedCharacters {
    fn class_info(&self, degree: usize) -> Result<Arc<ClassInfo>> {
        if let Some(info) = self.classes.lock().expect("class map poisoned").get(&degree) {
            return Ok(info.clone());
        }
        let info = Arc::new(ClassInfo::new(degree)?);
        Ok(self
            .classes
            .lock()
            .expect("class map poisoned")
            .entry(degree)
            .or_insert(info)
            .clone())
    }

    fn row(&self, shape: &Partition) -> Result<Arc<[i64]>> {
        if let Some(row) = self.rows.lock().expect("row map poisoned").get(shape) {
            return Ok(row.clone());
        }
        let n = shape.size();
        let row: Arc<[i64]> = if n <= self.max_n {
            let table = self.table(n)?;
            // tables list classes identity first, class_info the other way round
            let mut row = table.row(shape).expect("table covers every shape").to_vec();
            row.reverse();
            row.into()
        } else {
            character_row(shape, &*self.class_info(n)?)?.into()
        };
        Ok(self
            .rows
            .lock()
            .expect("row map poisoned")
            .entry(shape.clone())
            .or_insert(row)
            .clone())
    }
}

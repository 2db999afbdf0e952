//! On-disk verdict cache: one JSON file per canonical request, named by its SHA-256.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::registry::Args;
use crate::verdict::Verdict;

pub const CACHE_ENV: &str = "UROD_CACHE_DIR";
pub const CACHE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedRequest {
    pub id: String,
    pub order: i64,
    pub params: std::collections::BTreeMap<String, String>,
    pub seed: u64,
}

impl From<&Args> for CachedRequest {
    fn from(a: &Args) -> CachedRequest {
        CachedRequest { id: a.id.clone(), order: a.order, params: a.params.clone(), seed: a.seed }
    }
}

impl CachedRequest {
    pub fn args(&self) -> Args {
        Args { id: self.id.clone(), order: self.order, params: self.params.clone(), seed: self.seed }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Entry {
    pub schema: u32,
    pub tool_version: String,
    pub key: String,
    pub request: CachedRequest,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub entries: usize,
    pub bytes: u64,
}

#[derive(Debug)]
pub enum Lookup {
    Hit(Verdict),
    Miss,
    /// Unreadable or inconsistent entry; it has been removed.
    Evicted(String),
}

pub struct Cache {
    dir: PathBuf,
}

/// Canonical text of a resolved request; parameters are already sorted.
pub fn canonical_key(a: &Args) -> String {
    let ps: Vec<String> = a.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("v{}|{}|order={}|seed={}|{}", env!("CARGO_PKG_VERSION"), a.id, a.order, a.seed, ps.join(";"))
}

fn digest(key: &str) -> String {
    hex::encode(Sha256::digest(key.as_bytes()))
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// Directory from the flag if given, else from `UROD_CACHE_DIR`.
    pub fn configured(flag: Option<&Path>) -> Option<PathBuf> {
        flag.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", digest(key)))
    }

    fn files(&self) -> std::io::Result<Vec<PathBuf>> {
        let mut out: Vec<PathBuf> = fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        out.sort();
        Ok(out)
    }

    fn read_entry(path: &Path) -> std::result::Result<Entry, String> {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let e: Entry = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if e.schema != CACHE_SCHEMA {
            return Err(format!("schema {}", e.schema));
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
        if digest(&e.key) != stem || canonical_key(&e.request.args()) != e.key {
            return Err("key does not match contents".into());
        }
        Ok(e)
    }

    pub fn get(&self, a: &Args) -> Lookup {
        let key = canonical_key(a);
        let path = self.path_for(&key);
        if !path.exists() {
            return Lookup::Miss;
        }
        match Cache::read_entry(&path) {
            Ok(e) if e.key == key => Lookup::Hit(e.verdict),
            Ok(_) => {
                let _ = fs::remove_file(&path);
                Lookup::Evicted(format!("{}: key collision", path.display()))
            }
            Err(msg) => {
                let _ = fs::remove_file(&path);
                Lookup::Evicted(format!("{}: {msg}", path.display()))
            }
        }
    }

    /// Write atomically through a temporary file in the same directory.
    pub fn put(&self, a: &Args, v: &Verdict) -> std::io::Result<()> {
        let key = canonical_key(a);
        let entry = Entry {
            schema: CACHE_SCHEMA,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            key: key.clone(),
            request: CachedRequest::from(a),
            verdict: v.clone(),
        };
        let path = self.path_for(&key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(&entry).expect("entry serializes").as_bytes())?;
        }
        fs::rename(tmp, path)
    }

    pub fn evict(&self, a: &Args) -> std::io::Result<()> {
        let path = self.path_for(&canonical_key(a));
        if path.exists() {
            fs::remove_file(path)?;
        }
        Ok(())
    }

    pub fn stats(&self) -> std::io::Result<Stats> {
        let mut s = Stats::default();
        for p in self.files()? {
            s.entries += 1;
            s.bytes += fs::metadata(&p)?.len();
        }
        Ok(s)
    }

    pub fn clear(&self) -> std::io::Result<usize> {
        let fs_ = self.files()?;
        for p in &fs_ {
            fs::remove_file(p)?;
        }
        Ok(fs_.len())
    }

    /// All readable entries; corrupt ones are evicted and reported.
    pub fn scan(&self) -> std::io::Result<(Vec<Entry>, Vec<String>)> {
        let mut good = Vec::new();
        let mut bad = Vec::new();
        for p in self.files()? {
            match Cache::read_entry(&p) {
                Ok(e) => good.push(e),
                Err(msg) => {
                    let _ = fs::remove_file(&p);
                    bad.push(format!("{}: {msg}", p.display()));
                }
            }
        }
        Ok((good, bad))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry::{validate, CheckRequest};

    #[test]
    fn roundtrip_and_eviction() {
        let d = tempfile::tempdir().unwrap();
        let c = Cache::open(d.path()).unwrap();
        let a = validate(&CheckRequest::new("characters.c5").order(4)).unwrap();
        assert!(matches!(c.get(&a), Lookup::Miss));
        let v = Verdict::new("characters.c5", 4);
        c.put(&a, &v).unwrap();
        assert!(matches!(c.get(&a), Lookup::Hit(ref w) if *w == v));
        assert_eq!(c.stats().unwrap().entries, 1);
        fs::write(c.path_for(&canonical_key(&a)), "{not json").unwrap();
        assert!(matches!(c.get(&a), Lookup::Evicted(_)));
        assert_eq!(c.stats().unwrap().entries, 0);
    }
}

//! On-disk cache of claim outcomes keyed by input hash. Entries are written
//! to a temporary file in the cache directory and renamed into place, so
//! concurrent readers see either nothing or a complete entry.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::report::Outcome;

pub const CACHE_ENV: &str = "PROP_HOMOLOGY_CACHE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    input_hash: String,
    outcome: Outcome,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// The cache named by `PROP_HOMOLOGY_CACHE`, else by `flag`, else none.
    pub fn resolve(flag: Option<&Path>) -> io::Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
            Some(dir) => Cache::new(PathBuf::from(dir)).map(Some),
            None => flag.map(Cache::new).transpose(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// A stored outcome; unreadable or mismatched entries count as misses.
    pub fn load(&self, hash: &str) -> Option<Outcome> {
        let text = fs::read_to_string(self.path(hash)).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        (entry.input_hash == hash).then_some(entry.outcome)
    }

    pub fn store(&self, hash: &str, outcome: &Outcome) -> io::Result<()> {
        let entry = Entry { input_hash: hash.to_string(), outcome: outcome.clone() };
        let text = serde_json::to_vec(&entry).map_err(io::Error::other)?;
        write_atomic(&self.path(hash), &text)
    }
}

/// Writes `bytes` to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Check;

    #[test]
    fn round_trip_and_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("c")).unwrap();
        let o = Outcome { degrees: vec![], checks: vec![Check::new("x", true)], table: None };
        assert!(cache.load("abc").is_none());
        cache.store("abc", &o).unwrap();
        assert_eq!(cache.load("abc"), Some(o.clone()));
        fs::copy(cache.path("abc"), cache.path("def")).unwrap();
        assert!(cache.load("def").is_none());
        let leftovers: Vec<_> = fs::read_dir(cache.dir()).unwrap().collect();
        assert_eq!(leftovers.len(), 2);
    }
}

//! On-disk cache of command outputs, keyed by a SHA-256 content hash.
//!
//! Entries hold the exact bytes a command printed together with its exit
//! status, so a cache hit reproduces a cold run byte for byte.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable naming the cache directory; caching is off when unset.
pub const CACHE_ENV: &str = "GRAPHFORMS_CACHE_DIR";

/// A cached command result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub exit_code: u8,
    pub output: String,
}

/// Directory-backed cache.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// The cache configured through [`CACHE_ENV`], if any.
    pub fn from_env() -> Option<Cache> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(|d| Cache { dir: PathBuf::from(d) })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Hex SHA-256 of the key parts, separated so that `["ab", "c"]` and
    /// `["a", "bc"]` hash differently.
    pub fn key(parts: &[&str]) -> String {
        let mut h = Sha256::new();
        for p in parts {
            h.update((p.len() as u64).to_le_bytes());
            h.update(p.as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored entry for `key`; unreadable or corrupt entries count as misses.
    pub fn get(&self, key: &str) -> Option<Entry> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Stores an entry atomically (write to a temporary file, then rename).
    pub fn put(&self, key: &str, entry: &Entry) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!(".{key}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(entry).expect("entry serializes").as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(tmp, self.path(key))
    }
}

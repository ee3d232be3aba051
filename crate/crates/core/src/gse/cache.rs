//! Content-addressed store for decision results.
//!
//! Entries are JSON files named by the SHA-256 of the query (exact graph,
//! canonical form of the target and budget).

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::graph::{canonical_form, SimplicialGraph};
use crate::{Error, Result};

const FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchCache {
    dir: PathBuf,
}

impl SearchCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SearchCache { dir: dir.into() }
    }

    /// `$RAAG_CACHE_DIR`, else a directory under the system temp dir.
    pub fn from_env() -> Self {
        match std::env::var_os("RAAG_CACHE_DIR") {
            Some(dir) => Self::new(dir),
            None => Self::new(std::env::temp_dir().join("raag-cache")),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(graph: &SimplicialGraph, target: &SimplicialGraph, max_total: usize) -> Result<String> {
        let query = json!({
            "format": FORMAT,
            "graph": graph.to_json_value(),
            "graph_form": canonical_form(graph)?.to_hex(),
            "target_form": canonical_form(target)?.to_hex(),
            "max_total": max_total,
        });
        Ok(hex::encode(Sha256::digest(query.to_string().as_bytes())))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Missing or unreadable entries are misses.
    pub fn load(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn store(&self, key: &str, value: &Value) -> Result<()> {
        let io = |path: &Path| {
            let path = path.display().to_string();
            move |source| Error::Io { path, source }
        };
        fs::create_dir_all(&self.dir).map_err(io(&self.dir))?;
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, value.to_string()).map_err(io(&tmp))?;
        fs::rename(&tmp, &path).map_err(io(&path))
    }
}

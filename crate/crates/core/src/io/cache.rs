//! On-disk cache of Hall bases.
//!
//! One JSON file per `(n, w)` holds the node list and the ordering tag
//! [`ORDER_VERSION`]. Files with another tag are ignored and overwritten.
//! Readers take a shared lock and writers an exclusive one on a lock file
//! next to the entries.

use std::fs::{self, File, OpenOptions};
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hall::{HallBasis, HallNode, ORDER_VERSION};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "NILMULT_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CacheOutcome {
    Hit,
    Miss,
    Stale,
    Disabled,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    version: String,
    n: usize,
    w: usize,
    nodes: Vec<HallNode>,
}

#[derive(Clone, Debug)]
pub struct HallCache {
    dir: Option<PathBuf>,
}

impl HallCache {
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self { dir: Some(dir.into()) }
    }

    /// The flag value if given, otherwise the environment, otherwise none.
    pub fn from_flag_or_env(flag: Option<&Path>) -> Self {
        match flag {
            Some(p) => Self::at(p),
            None => std::env::var_os(CACHE_ENV).map(Self::at).unwrap_or_else(Self::disabled),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn entry_path(dir: &Path, n: usize, w: usize) -> PathBuf {
        dir.join(format!("hall-n{n}-w{w}.json"))
    }

    fn lock_file(dir: &Path) -> Result<File> {
        fs::create_dir_all(dir)?;
        Ok(OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(dir.join(".lock"))?)
    }

    /// The basis on `n` generators through weight `w`, read from the cache
    /// when a current entry exists and written to it otherwise.
    pub fn basis(&self, n: usize, w: usize, cap: usize) -> Result<(HallBasis, CacheOutcome)> {
        let Some(dir) = &self.dir else {
            return Ok((HallBasis::generate_with_cap(n, w, cap)?, CacheOutcome::Disabled));
        };
        let path = Self::entry_path(dir, n, w);
        let lock = Self::lock_file(dir)?;
        let mut outcome = CacheOutcome::Miss;
        lock.lock_shared()?;
        let cached = fs::read_to_string(&path).ok();
        lock.unlock()?;
        if let Some(text) = cached {
            match serde_json::from_str::<Entry>(&text) {
                Ok(e) if e.version == ORDER_VERSION && e.n == n && e.w == w => {
                    if e.nodes.len() <= cap {
                        if let Ok(b) = HallBasis::from_raw_nodes(n, w, e.nodes) {
                            return Ok((b, CacheOutcome::Hit));
                        }
                    }
                    outcome = CacheOutcome::Stale;
                }
                _ => outcome = CacheOutcome::Stale,
            }
        }
        let basis = HallBasis::generate_with_cap(n, w, cap)?;
        let entry = Entry {
            version: ORDER_VERSION.into(),
            n,
            w,
            nodes: basis.raw_nodes().to_vec(),
        };
        lock.lock()?;
        let tmp = path.with_extension("json.tmp");
        let written = (|| -> Result<()> {
            let mut f = File::create(&tmp)?;
            f.write_all(serde_json::to_string(&entry)?.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)?;
            Ok(())
        })();
        lock.unlock()?;
        written?;
        Ok((basis, outcome))
    }
}

//! On-disk cache of irrep tables. The key hashes the group table together
//! with the configuration (seed plus tolerances). Loaded tables are
//! re-validated; a file that fails to load or validate is rebuilt and
//! overwritten rather than trusted.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::group::FiniteGroup;
use crate::io::IrrepTableFile;
use crate::rep::{self, IrrepTable};
use crate::Tolerances;

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// a file existed but did not match or failed validation
    Stale,
}

#[derive(Debug, Clone)]
pub struct TableCache {
    dir: PathBuf,
}

pub fn cache_key(group: &FiniteGroup, seed: u64, tol: &Tolerances) -> String {
    let mut h = Sha256::new();
    h.update(group.content_hash().as_bytes());
    h.update(seed.to_le_bytes());
    for t in [tol.alg, tol.int, tol.split] {
        h.update(t.to_bits().to_le_bytes());
    }
    hex::encode(h.finalize())
}

impl TableCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(TableCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, group: &FiniteGroup, seed: u64, tol: &Tolerances) -> PathBuf {
        self.dir.join(format!("irreps-{}.json", cache_key(group, seed, tol)))
    }

    fn load(&self, path: &Path, group: &Arc<FiniteGroup>, seed: u64, tol: &Tolerances) -> Option<IrrepTable> {
        let text = std::fs::read_to_string(path).ok()?;
        let file: IrrepTableFile = serde_json::from_str(&text).ok()?;
        if file.seed != seed || file.tolerances != *tol {
            return None;
        }
        file.into_table(group).ok()
    }

    pub fn get_or_build(
        &self,
        group: &Arc<FiniteGroup>,
        seed: u64,
        tol: &Tolerances,
    ) -> Result<(IrrepTable, CacheOutcome)> {
        let path = self.path_for(group, seed, tol);
        let existed = path.exists();
        if existed {
            if let Some(t) = self.load(&path, group, seed, tol) {
                return Ok((t, CacheOutcome::Hit));
            }
        }
        let table = rep::irreps(group, seed, tol)?;
        let file = IrrepTableFile::from_table(&table, seed, *tol);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        std::fs::write(&tmp, serde_json::to_vec(&file)?)?;
        std::fs::rename(&tmp, &path)?;
        let outcome = if existed { CacheOutcome::Stale } else { CacheOutcome::Miss };
        Ok((table, outcome))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn miss_hit_and_stale() {
        let dir = tempfile::tempdir().unwrap();
        let cache = TableCache::new(dir.path()).unwrap();
        let g = Arc::new(FiniteGroup::cyclic(4));
        let tol = Tolerances::default();
        let (t1, o1) = cache.get_or_build(&g, 0, &tol).unwrap();
        assert_eq!(o1, CacheOutcome::Miss);
        let (t2, o2) = cache.get_or_build(&g, 0, &tol).unwrap();
        assert_eq!(o2, CacheOutcome::Hit);
        assert_eq!(t1.dims(), t2.dims());

        std::fs::write(cache.path_for(&g, 0, &tol), "{ not json").unwrap();
        let (_, o3) = cache.get_or_build(&g, 0, &tol).unwrap();
        assert_eq!(o3, CacheOutcome::Stale);

        // a different seed or tolerance is a different key
        assert_ne!(cache.path_for(&g, 1, &tol), cache.path_for(&g, 0, &tol));
        let loose = Tolerances { alg: 1e-8, ..tol };
        assert_ne!(cache.path_for(&g, 0, &loose), cache.path_for(&g, 0, &tol));
    }
}

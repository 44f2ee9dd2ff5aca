use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};

use bikei::{BikeiTable, Element, EngineConfig, PresentationMatrix};
use sha2::{Digest, Sha256};

/// Directory of completed tables, one file per content hash.
#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    /// Hash of everything that determines a completion result.
    pub fn key(m: &PresentationMatrix, seeds: &[(Element, Element)], cfg: &EngineConfig) -> String {
        let mut h = Sha256::new();
        h.update(m.to_text());
        for (a, b) in seeds {
            h.update(format!("seed {a} {b}\n"));
        }
        h.update(format!(
            "max {}\nstrategy {}\nmedial {}\n",
            cfg.max_size, cfg.zero_strategy, cfg.medial
        ));
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.table"))
    }

    /// Unreadable or corrupt entries count as misses.
    pub fn get(&self, key: &str) -> Option<BikeiTable> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        BikeiTable::parse(&text).ok()
    }

    pub fn put(&self, key: &str, table: &BikeiTable) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        // rename is atomic, so concurrent classify workers never see a torn file
        static WRITES: AtomicUsize = AtomicUsize::new(0);
        let n = WRITES.fetch_add(1, Ordering::Relaxed);
        let tmp = self
            .dir
            .join(format!("{key}.{}.{n}.tmp", std::process::id()));
        fs::write(&tmp, table.to_text())?;
        fs::rename(tmp, self.path(key))
    }
}

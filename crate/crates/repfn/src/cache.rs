//! Append-only JSONL cache of scan records, keyed by a stable profile hash.
//!
//! One [`CacheEntry`] per line. A line that fails to parse (typically a
//! partial write at the end of an interrupted scan) is skipped with a
//! warning; every valid line before and after it is kept.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use repfn_core::PositionProfile;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::record::ScanRecord;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub profile_hash: String,
    pub record: ScanRecord,
}

/// First 16 hex digits of SHA-256 over `"<m>:<labels>"`, labels written as
/// one `F`/`N`/`B` character per position.
pub fn profile_hash(profile: &PositionProfile) -> String {
    let digest = Sha256::digest(format!("{}:{}", profile.m(), profile).as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Default)]
pub struct LoadedCache {
    pub entries: Vec<CacheEntry>,
    pub warnings: Vec<String>,
}

/// Reads every valid entry of the cache at `path`; a missing file is empty.
pub fn load_entries(path: &Path) -> Result<LoadedCache> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(LoadedCache::default()),
        Err(e) => return Err(Error::io(path.display().to_string(), e)),
    };
    let mut loaded = LoadedCache::default();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path.display().to_string(), e))?;
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<CacheEntry>(&line) {
            Ok(entry) => loaded.entries.push(entry),
            Err(e) => {
                let warning = format!("{}: line {}: skipping corrupt cache entry ({e})", path.display(), i + 1);
                log::warn!("{warning}");
                loaded.warnings.push(warning);
            }
        }
    }
    Ok(loaded)
}

/// Serialized appender. Starts a fresh line if the file ends mid-line.
pub struct CacheWriter {
    path: PathBuf,
    out: BufWriter<File>,
}

impl CacheWriter {
    pub fn open(path: &Path) -> Result<CacheWriter> {
        let io_err = |e| Error::io(path.display().to_string(), e);
        let mut file = OpenOptions::new().create(true).read(true).append(true).open(path).map_err(io_err)?;
        let len = file.metadata().map_err(io_err)?.len();
        let mut needs_newline = false;
        if len > 0 {
            file.seek(SeekFrom::Start(len - 1)).map_err(io_err)?;
            let mut last = [0u8; 1];
            file.read_exact(&mut last).map_err(io_err)?;
            needs_newline = last[0] != b'\n';
        }
        let mut out = BufWriter::new(file);
        if needs_newline {
            out.write_all(b"\n").map_err(io_err)?;
        }
        Ok(CacheWriter { path: path.to_owned(), out })
    }

    pub fn append(&mut self, entry: &CacheEntry) -> Result<()> {
        let line = serde_json::to_string(entry)?;
        writeln!(self.out, "{line}").map_err(|e| Error::io(self.path.display().to_string(), e))
    }

    pub fn flush(&mut self) -> Result<()> {
        self.out.flush().map_err(|e| Error::io(self.path.display().to_string(), e))
    }
}

/// Appends `entries` and flushes.
pub fn append_entries(path: &Path, entries: &[CacheEntry]) -> Result<()> {
    let mut writer = CacheWriter::open(path)?;
    for entry in entries {
        writer.append(entry)?;
    }
    writer.flush()
}

/// Loaded cache as a lookup table; later lines win over earlier ones.
pub fn index(loaded: &LoadedCache) -> HashMap<String, ScanRecord> {
    loaded.entries.iter().map(|e| (e.profile_hash.clone(), e.record.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use repfn_core::theorem::{classify, Instance};
    use repfn_core::ProfileKind;

    fn entry(m: usize, r: usize) -> CacheEntry {
        let instance = Instance { m, kind: ProfileKind::PuncturedPoint(r) };
        let record = ScanRecord::from_classification(&classify(instance).unwrap(), 7);
        CacheEntry { profile_hash: profile_hash(&instance.profile().unwrap()), record }
    }

    #[test]
    fn hash_is_stable_and_distinguishes_profiles() {
        let p = PositionProfile::punctured(8, 4).unwrap();
        assert_eq!(profile_hash(&p), profile_hash(&PositionProfile::punctured(8, 4).unwrap()));
        assert_eq!(profile_hash(&p).len(), 16);
        assert_ne!(profile_hash(&p), profile_hash(&PositionProfile::shared(8, 4).unwrap()));
        assert_ne!(profile_hash(&p), profile_hash(&PositionProfile::punctured(8, 3).unwrap()));
    }

    #[test]
    fn roundtrip_three_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let written = vec![entry(8, 4), entry(8, 3), entry(4, 2)];
        append_entries(&path, &written).unwrap();
        let loaded = load_entries(&path).unwrap();
        assert_eq!(loaded.entries, written);
        assert!(loaded.warnings.is_empty());
    }

    #[test]
    fn truncated_final_line_keeps_prior_entries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.jsonl");
        let written = vec![entry(8, 4), entry(8, 3), entry(4, 2)];
        append_entries(&path, &written).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, &text[..text.len() - 20]).unwrap();

        let loaded = load_entries(&path).unwrap();
        assert_eq!(loaded.entries, written[..2]);
        assert_eq!(loaded.warnings.len(), 1);
        assert!(loaded.warnings[0].contains("line 3"));

        // New entries start on a fresh line after the damaged one.
        append_entries(&path, &[entry(16, 8)]).unwrap();
        let loaded = load_entries(&path).unwrap();
        assert_eq!(loaded.entries.len(), 3);
        assert_eq!(loaded.entries[2], entry(16, 8));
    }

    #[test]
    fn missing_file_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let loaded = load_entries(&dir.path().join("absent.jsonl")).unwrap();
        assert!(loaded.entries.is_empty());
    }
}

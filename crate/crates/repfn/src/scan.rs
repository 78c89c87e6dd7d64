//! Parallel sweep over a grid of profiles.
//!
//! Each `(m, r)` cell is solved independently on a rayon pool. New records
//! stream to a single cache writer; the report is sorted by `(m, r)` at the
//! end so it does not depend on scheduling.

use std::path::PathBuf;
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use repfn_core::theorem::{classify, Instance};
use repfn_core::{KindFamily, UniverseCap};

use crate::cache::{self, CacheEntry, CacheWriter};
use crate::error::{Error, Result};
use crate::record::ScanRecord;

/// Largest `m_max` accepted without an explicit budget.
pub fn default_budget(family: KindFamily) -> usize {
    match family {
        KindFamily::Punctured | KindFamily::Shared => 1024,
        KindFamily::Full => 1 << 16,
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub family: KindFamily,
    pub m_max: usize,
    pub jobs: usize,
    pub universe_cap: UniverseCap,
    pub budget: Option<usize>,
    pub cache_path: Option<PathBuf>,
}

impl ScanOptions {
    pub fn new(family: KindFamily, m_max: usize) -> ScanOptions {
        ScanOptions {
            family,
            m_max,
            jobs: 1,
            universe_cap: UniverseCap::DEFAULT,
            budget: None,
            cache_path: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub family: KindFamily,
    pub m_max: usize,
    pub records: Vec<ScanRecord>,
    /// Instances solved in this run.
    pub solved: usize,
    /// Instances taken from the cache.
    pub cache_hits: usize,
    pub cache_warnings: Vec<String>,
}

impl ScanReport {
    pub fn solutions(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records.iter().filter(|r| r.is_solution())
    }

    pub fn violations(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records.iter().filter(|r| r.is_violation())
    }

    pub fn anomalies(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records.iter().filter(|r| r.anomaly)
    }

    /// Records with timing zeroed.
    pub fn without_timing(&self) -> Vec<ScanRecord> {
        self.records.iter().map(ScanRecord::without_timing).collect()
    }
}

fn solve_one(instance: Instance) -> Result<ScanRecord> {
    let start = Instant::now();
    let class = classify(instance)?;
    let micros = start.elapsed().as_micros() as u64;
    Ok(ScanRecord::from_classification(&class, micros))
}

pub fn run_scan(opts: &ScanOptions) -> Result<ScanReport> {
    let budget = opts.budget.unwrap_or_else(|| default_budget(opts.family));
    if opts.m_max > budget {
        return Err(Error::Budget { requested: opts.m_max, budget, family: opts.family.name() });
    }
    opts.universe_cap.check(2 * opts.m_max)?;
    if opts.jobs == 0 {
        return Err(Error::Usage("--jobs must be at least 1".into()));
    }

    let instances = opts.family.instances(opts.m_max);
    let (cached, cache_warnings) = match &opts.cache_path {
        Some(path) => {
            let loaded = cache::load_entries(path)?;
            (cache::index(&loaded), loaded.warnings)
        }
        None => Default::default(),
    };

    let mut records = Vec::with_capacity(instances.len());
    let mut pending = Vec::new();
    for instance in instances {
        let hash = cache::profile_hash(&instance.profile()?);
        match cached.get(&hash) {
            Some(record) if record.instance() == instance => records.push(record.clone()),
            _ => pending.push((instance, hash)),
        }
    }
    let cache_hits = records.len();
    let solved = pending.len();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start {} workers: {e}", opts.jobs)))?;

    let fresh: Vec<ScanRecord> = std::thread::scope(|scope| -> Result<Vec<ScanRecord>> {
        let (tx, rx) = mpsc::channel::<CacheEntry>();
        let writer = opts.cache_path.as_ref().map(|path| {
            let path = path.clone();
            scope.spawn(move || -> Result<()> {
                let mut out = CacheWriter::open(&path)?;
                for entry in rx {
                    out.append(&entry)?;
                }
                out.flush()
            })
        });
        let results = pool.install(|| {
            pending
                .par_iter()
                .map_with(tx, |tx, (instance, hash)| {
                    let record = solve_one(*instance)?;
                    // The writer may be absent; a closed channel is fine then.
                    let _ = tx.send(CacheEntry { profile_hash: hash.clone(), record: record.clone() });
                    Ok(record)
                })
                .collect::<Result<Vec<_>>>()
        });
        if let Some(handle) = writer {
            handle.join().expect("cache writer panicked")?;
        }
        results
    })?;

    records.extend(fresh);
    records.sort_by_key(|r| r.instance());
    Ok(ScanReport {
        family: opts.family,
        m_max: opts.m_max,
        records,
        solved,
        cache_hits,
        cache_warnings,
    })
}

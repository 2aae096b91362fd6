//! Append-only results log and the lookup cache built from it.
//!
//! One JSON object per line. A record is keyed by [`canonical_key`] and the
//! invariant tag; the key is a cache key under the identity labeling, not an
//! isomorphism certificate, so isomorphic graphs with different numberings
//! get separate records.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use isolation_core::io::serialize_graph;
use isolation_core::solvers::compute;
use isolation_core::{Budget, Graph, Invariant, InvariantResult, SolverError};
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "ISOLATION_LAB_CACHE";
pub const DEFAULT_CACHE: &str = "isolation-lab-results.jsonl";

/// `n=..;m=..;deg=..;E=u-v,...` with sorted degrees and edges.
pub fn canonical_key(g: &Graph) -> String {
    let mut deg = g.degrees();
    deg.sort_unstable();
    let deg: Vec<String> = deg.iter().map(usize::to_string).collect();
    let edges: Vec<String> = g.edges().map(|(u, v)| format!("{u}-{v}")).collect();
    format!(
        "n={};m={};deg={};E={}",
        g.order(),
        g.size(),
        deg.join(","),
        edges.join(",")
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub key: String,
    /// Edge-list text of the graph.
    pub graph: String,
    pub invariant: String,
    pub value: usize,
    pub witness: Vec<usize>,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub timestamp: u64,
}

impl InvariantRecord {
    pub fn new(g: &Graph, result: &InvariantResult) -> Self {
        Self {
            key: canonical_key(g),
            graph: serialize_graph(g),
            invariant: result.invariant.tag(),
            value: result.value,
            witness: result.witness.indices(),
            nodes: result.stats.nodes,
            elapsed_ms: result.stats.elapsed.as_millis() as u64,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

pub fn cache_path() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE))
}

/// Memoizing front for the solvers, shared by worker threads. New records
/// are collected here and appended by [`Store::flush`] from one thread.
pub struct Store {
    path: Option<PathBuf>,
    known: Mutex<HashMap<(String, String), InvariantRecord>>,
    fresh: Mutex<Vec<InvariantRecord>>,
    use_cache: bool,
}

#[derive(Clone, Debug)]
pub struct Lookup {
    pub record: InvariantRecord,
    pub cached: bool,
}

impl Store {
    /// A store backed by the log at `path`; a missing file is an empty log.
    pub fn open(path: &Path, use_cache: bool) -> Result<Self> {
        let mut known = HashMap::new();
        if path.exists() {
            let text =
                std::fs::read_to_string(path).with_context(|| format!("reading results log {}", path.display()))?;
            for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
                let r: InvariantRecord =
                    serde_json::from_str(line).with_context(|| format!("{}:{}", path.display(), i + 1))?;
                known.insert((r.key.clone(), r.invariant.clone()), r);
            }
        }
        Ok(Self {
            path: Some(path.to_path_buf()),
            known: Mutex::new(known),
            fresh: Mutex::new(Vec::new()),
            use_cache,
        })
    }

    /// A store that never touches disk.
    pub fn in_memory() -> Self {
        Self {
            path: None,
            known: Mutex::new(HashMap::new()),
            fresh: Mutex::new(Vec::new()),
            use_cache: true,
        }
    }

    /// Returns the cached record when allowed; otherwise solves, audits the
    /// fresh value against any cached one, and records it.
    pub fn get(&self, g: &Graph, invariant: Invariant, budget: Budget) -> Result<Lookup, SolverError> {
        let id = (canonical_key(g), invariant.tag());
        let cached = self.known.lock().expect("store lock").get(&id).cloned();
        if self.use_cache {
            if let Some(record) = cached {
                return Ok(Lookup { record, cached: true });
            }
        }
        let result = compute(g, invariant, budget)?;
        let record = InvariantRecord::new(g, &result);
        if let Some(old) = cached {
            if old.value != record.value {
                return Err(SolverError::InvalidArgument(format!(
                    "cache audit failed for {} on {}: cached {}, recomputed {}",
                    id.1, id.0, old.value, record.value
                )));
            }
        }
        self.known.lock().expect("store lock").insert(id, record.clone());
        self.fresh.lock().expect("store lock").push(record.clone());
        Ok(Lookup { record, cached: false })
    }

    pub fn value(&self, g: &Graph, invariant: Invariant, budget: Budget) -> Result<usize, SolverError> {
        Ok(self.get(g, invariant, budget)?.record.value)
    }

    /// Appends the records computed since the last flush, in key order.
    pub fn flush(&self) -> Result<usize> {
        let mut fresh = std::mem::take(&mut *self.fresh.lock().expect("store lock"));
        let Some(path) = &self.path else {
            return Ok(0);
        };
        if fresh.is_empty() {
            return Ok(0);
        }
        fresh.sort_by(|a, b| (&a.key, &a.invariant).cmp(&(&b.key, &b.invariant)));
        fresh.dedup_by(|a, b| a.key == b.key && a.invariant == b.invariant);
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening results log {}", path.display()))?;
        for r in &fresh {
            let line = serde_json::to_string(r)?;
            if line.contains('\n') {
                bail!("record serialization produced a multi-line object");
            }
            writeln!(file, "{line}")?;
        }
        Ok(fresh.len())
    }
}

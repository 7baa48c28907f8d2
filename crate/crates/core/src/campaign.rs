//! Exhaustive sweeps over tree families with resumable checkpoints.
//!
//! A campaign walks every free tree on `n_min..=n_max` vertices in code
//! order, keeps those whose non-leaf vertices all have degree at least `d`,
//! and runs the requested checks on each. The whole resumable state is the
//! current `n` and the last processed code, so a checkpoint is one small
//! document.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::registry::{tree_checks, CheckVerdict, RegistryError, TreeCheck};
use crate::trees::{nonleaf_count, FreeTrees, TreeCode, TreeError};

/// From this order on, family membership is enforced inside the generator.
pub const PRUNING_FROM: usize = 30;

pub const DEFAULT_CHECKPOINT_INTERVAL: u64 = 10_000;

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("invalid campaign spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    UnknownCheck(#[from] RegistryError),
    #[error("checkpoint belongs to spec {found}, this spec is {expected}")]
    DigestMismatch { expected: String, found: String },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("worker pool: {0}")]
    Pool(String),
}

fn default_interval() -> u64 {
    DEFAULT_CHECKPOINT_INTERVAL
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub min_nonleaf_degree: usize,
    pub checks: Vec<String>,
    #[serde(default = "default_interval")]
    pub checkpoint_interval: u64,
}

impl CampaignSpec {
    pub fn validate(&self) -> Result<(), CampaignError> {
        if self.n_min < 1 {
            return Err(CampaignError::InvalidSpec("n_min must be at least 1".into()));
        }
        if self.n_max < self.n_min {
            return Err(CampaignError::InvalidSpec(format!("n_max {} is below n_min {}", self.n_max, self.n_min)));
        }
        if self.min_nonleaf_degree < 2 {
            return Err(CampaignError::InvalidSpec("min_nonleaf_degree must be at least 2".into()));
        }
        if self.checkpoint_interval == 0 {
            return Err(CampaignError::InvalidSpec("checkpoint_interval must be positive".into()));
        }
        let cap = if self.n_max >= PRUNING_FROM { crate::trees::MAX_CODE_VERTICES } else { PRUNING_FROM };
        if self.n_max > cap {
            return Err(CampaignError::InvalidSpec(format!("n_max {} is above {cap}", self.n_max)));
        }
        let registry = tree_checks();
        for name in &self.checks {
            registry.get(name)?;
        }
        Ok(())
    }

    /// Same spec with the check list sorted and deduplicated.
    pub fn normalized(&self) -> CampaignSpec {
        let mut spec = self.clone();
        spec.checks.sort();
        spec.checks.dedup();
        spec
    }

    /// `sha256:` of the normalized spec's JSON.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(&self.normalized()).expect("spec serializes");
        format!("sha256:{}", hex::encode(Sha256::digest(json)))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    /// Trees produced by the generator. Below the pruning order this is
    /// every free tree; from it on, only family members are produced.
    pub trees_seen: u64,
    pub in_family: u64,
    /// Per check: trees it verified (for the stripped criterion, trees on
    /// which the predicate holds).
    pub passed: BTreeMap<String, u64>,
    pub inconclusive: BTreeMap<String, u64>,
    pub max_nonleaf: u64,
    /// `⌊(n − 2)/(d − 1)⌋`, the most non-leaf vertices a family member can
    /// have.
    pub nonleaf_cap: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub n: usize,
    pub code: TreeCode,
    pub check: String,
    pub detail: String,
}

impl Counterexample {
    /// Runs the failing check again; true iff it still fails.
    pub fn replay(&self) -> Result<bool, CampaignError> {
        let registry = tree_checks();
        let check = registry.get(&self.check)?;
        let verdict = check.check(&self.code, &self.code.to_graph());
        Ok(matches!(verdict, CheckVerdict::Violated(_)))
    }
}

/// Checkpoint document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignState {
    pub spec_digest: String,
    /// Order currently being swept; `n_max + 1` once complete.
    pub n: usize,
    /// Last processed code at `n`, `None` before the first.
    pub cursor_code: Option<TreeCode>,
    pub tallies: BTreeMap<usize, Tally>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u64,
    pub complete: bool,
}

impl CampaignState {
    pub fn fresh(spec: &CampaignSpec) -> Self {
        CampaignState {
            spec_digest: spec.digest(),
            n: spec.n_min,
            cursor_code: None,
            tallies: BTreeMap::new(),
            counterexamples: Vec::new(),
            elapsed_ms: 0,
            complete: false,
        }
    }

    /// Everything except timing, for comparing runs.
    pub fn outcome_json(&self) -> String {
        serde_json::to_string(&(&self.tallies, &self.counterexamples)).expect("state serializes")
    }
}

/// Writes to a sibling temporary file, then renames over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CampaignError> {
    let io_err = |source| CampaignError::Io { path: path.to_path_buf(), source };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, bytes).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

pub fn save_state(path: &Path, state: &CampaignState) -> Result<(), CampaignError> {
    let json = serde_json::to_vec_pretty(state).expect("state serializes");
    write_atomic(path, &json)
}

pub fn load_state(path: &Path) -> Result<CampaignState, CampaignError> {
    let bytes = fs::read(path).map_err(|source| CampaignError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_slice(&bytes).map_err(|source| CampaignError::Json { path: path.to_path_buf(), source })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Complete,
    Interrupted,
}

pub struct RunOptions<'a> {
    pub jobs: usize,
    /// Checkpoint file, rewritten after every chunk.
    pub checkpoint: Option<PathBuf>,
    /// Return after this many checkpoints, as if killed right after the
    /// last write.
    pub stop_after_checkpoints: Option<u64>,
    pub on_checkpoint: Option<&'a mut dyn FnMut(&CampaignState)>,
}

impl Default for RunOptions<'_> {
    fn default() -> Self {
        RunOptions { jobs: 1, checkpoint: None, stop_after_checkpoints: None, on_checkpoint: None }
    }
}

#[derive(Debug, Clone)]
pub struct CampaignRun {
    pub state: CampaignState,
    pub status: RunStatus,
}

struct TreeResult {
    in_family: bool,
    nonleaf: u64,
    verdicts: Vec<CheckVerdict>,
}

fn evaluate(code: &TreeCode, d: usize, pruned: bool, checks: &[&dyn TreeCheck]) -> TreeResult {
    if !pruned && !code.in_family(d) {
        return TreeResult { in_family: false, nonleaf: 0, verdicts: Vec::new() };
    }
    let tree = code.to_graph();
    let verdicts = checks.iter().map(|c| c.check(code, &tree)).collect();
    TreeResult { in_family: true, nonleaf: nonleaf_count(code) as u64, verdicts }
}

fn fresh_tally(n: usize, d: usize, checks: &[&dyn TreeCheck]) -> Tally {
    let zeroes: BTreeMap<String, u64> = checks.iter().map(|c| (c.name().to_string(), 0)).collect();
    Tally {
        passed: zeroes.clone(),
        inconclusive: zeroes,
        nonleaf_cap: (n.saturating_sub(2) / (d - 1)) as u64,
        ..Tally::default()
    }
}

pub fn run_campaign(
    spec: &CampaignSpec,
    resume: Option<CampaignState>,
    mut options: RunOptions<'_>,
) -> Result<CampaignRun, CampaignError> {
    spec.validate()?;
    let spec = spec.normalized();
    let digest = spec.digest();
    let mut state = match resume {
        Some(state) if state.spec_digest != digest => {
            return Err(CampaignError::DigestMismatch { expected: digest, found: state.spec_digest })
        }
        Some(state) => state,
        None => CampaignState::fresh(&spec),
    };
    let registry = tree_checks();
    let checks: Vec<&dyn TreeCheck> = spec.checks.iter().map(|c| registry.get(c)).collect::<Result<_, _>>()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs.max(1))
        .build()
        .map_err(|e| CampaignError::Pool(e.to_string()))?;

    let d = spec.min_nonleaf_degree;
    let interval = spec.checkpoint_interval as usize;
    let started = Instant::now();
    let base_elapsed = state.elapsed_ms;
    let mut written = 0u64;

    while !state.complete {
        let n = state.n;
        let pruned = n >= PRUNING_FROM;
        let mut trees = if pruned { FreeTrees::family(n, d)? } else { FreeTrees::new(n)? };
        if let Some(cursor) = &state.cursor_code {
            trees = trees.resume_after(cursor)?;
        }
        state.tallies.entry(n).or_insert_with(|| fresh_tally(n, d, &checks));
        loop {
            let chunk: Vec<TreeCode> = trees.by_ref().take(interval).collect();
            let exhausted = chunk.len() < interval;
            let results: Vec<TreeResult> =
                pool.install(|| chunk.par_iter().map(|code| evaluate(code, d, pruned, &checks)).collect());

            let tally = state.tallies.get_mut(&n).expect("tally created above");
            for (code, result) in chunk.iter().zip(results) {
                tally.trees_seen += 1;
                if !result.in_family {
                    continue;
                }
                tally.in_family += 1;
                tally.max_nonleaf = tally.max_nonleaf.max(result.nonleaf);
                for (check, verdict) in checks.iter().zip(result.verdicts) {
                    let name = check.name().to_string();
                    match verdict {
                        CheckVerdict::Verified => *tally.passed.entry(name).or_default() += 1,
                        CheckVerdict::Inconclusive => *tally.inconclusive.entry(name).or_default() += 1,
                        CheckVerdict::Violated(detail) => {
                            state.counterexamples.push(Counterexample { n, code: code.clone(), check: name, detail })
                        }
                    }
                }
            }
            if let Some(last) = chunk.last() {
                state.cursor_code = Some(last.clone());
            }
            if exhausted {
                state.n = n + 1;
                state.cursor_code = None;
                state.complete = state.n > spec.n_max;
            }
            state.elapsed_ms = base_elapsed + started.elapsed().as_millis() as u64;
            if let Some(path) = &options.checkpoint {
                save_state(path, &state)?;
            }
            written += 1;
            if let Some(callback) = options.on_checkpoint.as_mut() {
                callback(&state);
            }
            if !state.complete && options.stop_after_checkpoints == Some(written) {
                return Ok(CampaignRun { state, status: RunStatus::Interrupted });
            }
            if exhausted {
                break;
            }
        }
    }
    Ok(CampaignRun { state, status: RunStatus::Complete })
}

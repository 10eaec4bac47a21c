//! Leap-on-success exhaustive search.
//!
//! Stages run at increasing apertures L. Each stage walks the candidates with
//! sensors pinned at 0 and L and stops at the first array satisfying the
//! robust-MRA constraints; the first stage that is exhausted without success
//! proves the previous aperture optimal.
//!
//! A stage is processed in blocks of `checkpoint_interval` candidates. Inside
//! a block, workers pull contiguous chunks in ascending order and share the
//! smallest successful index found so far, so deterministic runs return the
//! lexicographically first valid array regardless of worker count.

mod checkpoint;
mod combinatorics;
mod kernel;

use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use checkpoint::{Checkpoint, FilterSettings, CHECKPOINT_VERSION};
pub use combinatorics::{
    aperture_lower_bound, aperture_upper_bound, binomial, candidate_count, rank_candidate,
    unrank_candidate,
};
pub use kernel::MAX_KERNEL_APERTURE;

use crate::coarray::SensorArray;
use crate::error::{Error, Result};
use crate::robustness::rmra_check;
use kernel::StageSpace;

/// Smallest sensor count with a sparse two-fold redundant array.
pub const MIN_SENSORS: usize = 6;

/// How often worker loops poll the shared stop signals.
const POLL_EVERY: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    /// First aperture to try; defaults to [`aperture_lower_bound`].
    pub l_start: Option<u32>,
    /// No stage beyond this aperture is attempted.
    pub l_limit: Option<u32>,
    pub tight_bounds: bool,
    /// Force positions 1 and L-1, which every valid array contains.
    pub prune_filters: bool,
    /// Skip candidates that sort after their mirror image (fast mode only).
    pub mirror_prune: bool,
    /// Report the lexicographically first valid array of each stage.
    pub deterministic: bool,
    pub workers: usize,
    /// Maximum candidates evaluated over the whole run.
    pub candidate_budget: Option<u64>,
    pub checkpoint_path: Option<PathBuf>,
    /// Block size in candidates; checkpoints are written between blocks.
    pub checkpoint_interval: u64,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig {
            n,
            l_start: None,
            l_limit: None,
            tight_bounds: false,
            prune_filters: true,
            mirror_prune: true,
            deterministic: false,
            workers: 1,
            candidate_budget: None,
            checkpoint_path: None,
            checkpoint_interval: 1 << 22,
        }
    }

    /// Lexicographic, unfiltered, single worker: the plain enumeration.
    pub fn reference(n: usize) -> Self {
        SearchConfig {
            prune_filters: false,
            mirror_prune: false,
            deterministic: true,
            ..Self::new(n)
        }
    }

    pub fn start_aperture(&self) -> u32 {
        self.l_start
            .unwrap_or_else(|| aperture_lower_bound(self.n, self.tight_bounds))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n < MIN_SENSORS {
            return bad(format!("n must be at least {MIN_SENSORS}, got {}", self.n));
        }
        if aperture_upper_bound(self.n) > MAX_KERNEL_APERTURE {
            return bad(format!(
                "n = {} needs apertures beyond {MAX_KERNEL_APERTURE}",
                self.n
            ));
        }
        let start = self.start_aperture();
        if (start as usize) < self.n {
            return bad(format!("l_start {start} is below n = {}", self.n));
        }
        if let Some(limit) = self.l_limit {
            if limit < start {
                return bad(format!("l_limit {limit} is below l_start {start}"));
            }
        }
        if self.workers == 0 {
            return bad("workers must be at least 1".into());
        }
        if self.checkpoint_interval == 0 {
            return bad("checkpoint_interval must be positive".into());
        }
        Ok(())
    }

    fn filters(&self) -> FilterSettings {
        FilterSettings {
            prune_filters: self.prune_filters,
            mirror_prune: self.mirror_prune && !self.deterministic,
            deterministic: self.deterministic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageOutcome {
    /// `candidate_index` is the array's rank among all C(L-1, N-2)
    /// candidates, whether or not filters were on.
    Found {
        array: SensorArray,
        candidate_index: u64,
    },
    Exhausted,
    BudgetExceeded,
}

/// Result of one aperture. Equality ignores `elapsed`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageResult {
    pub l: u32,
    pub outcome: StageOutcome,
    pub candidates_examined: u64,
    #[serde(with = "duration_nanos")]
    pub elapsed: Duration,
}

impl PartialEq for StageResult {
    fn eq(&self, other: &Self) -> bool {
        self.l == other.l
            && self.outcome == other.outcome
            && self.candidates_examined == other.candidates_examined
    }
}

impl Eq for StageResult {}

impl StageResult {
    pub fn found(&self) -> Option<&SensorArray> {
        match &self.outcome {
            StageOutcome::Found { array, .. } => Some(array),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Budget,
    ApertureLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Verdict {
    /// The stage at `aperture + 1` was exhausted.
    Optimal {
        aperture: u32,
    },
    /// The run stopped before an exhaustion proof.
    NearOptimal {
        aperture: u32,
        reason: StopReason,
    },
    NoneFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub stages: Vec<StageResult>,
    pub verdict: Verdict,
    pub best_array: Option<SensorArray>,
}

mod duration_nanos {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(u64::try_from(d.as_nanos()).unwrap_or(u64::MAX))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_nanos(u64::deserialize(d)?))
    }
}

/// Outcome of scanning part of a stage.
struct Scan {
    found: Option<u64>,
    /// Next unscanned index (block end when nothing was found).
    resume_at: u64,
    examined: u64,
}

/// Scans `[start, end)` of `space` with `workers` threads.
fn scan_block(space: StageSpace, start: u64, end: u64, cfg: &SearchConfig) -> Scan {
    if start >= end {
        return Scan {
            found: None,
            resume_at: end,
            examined: 0,
        };
    }
    let filters = cfg.filters();
    let workers = cfg.workers.max(1) as u64;
    let span = end - start;
    let chunk = (span / (workers * 16)).clamp(POLL_EVERY, 1 << 20);
    let chunks = span.div_ceil(chunk);

    let best = AtomicU64::new(u64::MAX);
    let stop = AtomicBool::new(false);
    let next_chunk = AtomicU64::new(0);
    let examined = AtomicU64::new(0);

    let work = || {
        let mut local = 0u64;
        loop {
            let c = next_chunk.fetch_add(1, Ordering::Relaxed);
            if c >= chunks {
                break;
            }
            let lo = start + c * chunk;
            let hi = (lo + chunk).min(end);
            if lo >= best.load(Ordering::Relaxed) || stop.load(Ordering::Relaxed) {
                break;
            }
            let mut cur = space.cursor(lo);
            let mut idx = lo;
            while idx < hi {
                if (idx - lo).is_multiple_of(POLL_EVERY)
                    && (idx >= best.load(Ordering::Relaxed) || stop.load(Ordering::Relaxed))
                {
                    break;
                }
                let mask = cur.mask();
                local += 1;
                let considered = !filters.mirror_prune || kernel::not_after_mirror(mask, space.l);
                if considered && kernel::valid(mask, space.l) {
                    best.fetch_min(idx, Ordering::Relaxed);
                    if !filters.deterministic {
                        stop.store(true, Ordering::Relaxed);
                    }
                    break;
                }
                idx += 1;
                if idx < hi {
                    cur.advance();
                }
            }
        }
        examined.fetch_add(local, Ordering::Relaxed);
    };

    if workers == 1 {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(work);
            }
        });
    }

    let found = Some(best.into_inner()).filter(|&b| b != u64::MAX);
    let examined = match (filters.deterministic, found) {
        // Everything before the winner counts, independent of scheduling.
        (true, Some(idx)) => idx + 1 - start,
        (true, None) => span,
        (false, _) => examined.into_inner(),
    };
    Scan {
        found,
        resume_at: found.map_or(end, |i| i + 1),
        examined,
    }
}

/// Resumable state of a run: completed stages plus the position inside the
/// current one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    pub n: usize,
    pub l: u32,
    pub next_index: u64,
    pub stages: Vec<StageResult>,
    /// Candidates already examined in the current stage.
    pub stage_examined: u64,
    pub stage_elapsed: Duration,
}

/// A leap-on-success run that can be interrupted and resumed.
pub struct Search {
    cfg: SearchConfig,
    state: SearchState,
}

impl Search {
    pub fn new(cfg: SearchConfig) -> Result<Self> {
        cfg.validate()?;
        let state = SearchState {
            n: cfg.n,
            l: cfg.start_aperture(),
            next_index: 0,
            stages: Vec::new(),
            stage_examined: 0,
            stage_elapsed: Duration::ZERO,
        };
        Ok(Search { cfg, state })
    }

    /// Continues from a checkpoint written with the same n and filters.
    pub fn resume(cfg: SearchConfig, ckpt: Checkpoint) -> Result<Self> {
        cfg.validate()?;
        if ckpt.n != cfg.n {
            return Err(Error::CorruptCheckpoint(format!(
                "checkpoint is for n = {}, run is for n = {}",
                ckpt.n, cfg.n
            )));
        }
        if ckpt.filters != cfg.filters() {
            return Err(Error::CorruptCheckpoint(
                "filter settings differ from the run".into(),
            ));
        }
        Ok(Search {
            state: ckpt.into_state(),
            cfg,
        })
    }

    /// Picks up `cfg.checkpoint_path` if the file exists, else starts fresh.
    pub fn new_or_resume(cfg: SearchConfig) -> Result<Self> {
        match &cfg.checkpoint_path {
            Some(path) if path.exists() => {
                let ckpt = Checkpoint::load(path)?;
                Search::resume(cfg, ckpt)
            }
            _ => Search::new(cfg),
        }
    }

    pub fn state(&self) -> &SearchState {
        &self.state
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint::from_state(&self.state, self.cfg.filters())
    }

    fn save(&self) -> Result<()> {
        match &self.cfg.checkpoint_path {
            Some(path) => self.checkpoint().save(path),
            None => Ok(()),
        }
    }

    /// Runs until a verdict is reached or the budget runs out, calling
    /// `on_stage` after every stage.
    pub fn run(&mut self, mut on_stage: impl FnMut(&StageResult)) -> Result<SearchOutcome> {
        let n = self.cfg.n;
        let upper = aperture_upper_bound(n);
        let mut budget = self.cfg.candidate_budget;

        loop {
            let l = self.state.l;
            if l > upper {
                // Pair counting rules out every candidate at this aperture.
                let stage = StageResult {
                    l,
                    outcome: StageOutcome::Exhausted,
                    candidates_examined: 0,
                    elapsed: Duration::ZERO,
                };
                on_stage(&stage);
                self.finish_stage(stage)?;
                return Ok(self.outcome(None));
            }
            if self.cfg.l_limit.is_some_and(|limit| l > limit) {
                return Ok(self.outcome(Some(StopReason::ApertureLimit)));
            }

            let space = StageSpace {
                n,
                l,
                filtered: self.cfg.prune_filters,
            };
            let len = space.len();
            let mut found = None;
            let mut budget_hit = false;
            while found.is_none() && self.state.next_index < len {
                let start = self.state.next_index;
                let mut end = start.saturating_add(self.cfg.checkpoint_interval).min(len);
                if let Some(left) = budget {
                    if left == 0 {
                        budget_hit = true;
                        break;
                    }
                    end = end.min(start.saturating_add(left));
                }
                let t0 = Instant::now();
                let scan = scan_block(space, start, end, &self.cfg);
                self.state.stage_elapsed += t0.elapsed();
                self.state.stage_examined += scan.examined;
                self.state.next_index = scan.resume_at;
                if let Some(left) = budget.as_mut() {
                    *left = left.saturating_sub(scan.examined);
                }
                found = scan.found;
                if found.is_none() {
                    self.save()?;
                }
            }

            let outcome = match found {
                Some(idx) => {
                    let array = SensorArray::from_canonical(space.positions_at(idx));
                    assert!(
                        rmra_check(&array, n, l).overall,
                        "search kernel accepted an invalid array {array}"
                    );
                    let candidate_index = rank_candidate(&array);
                    StageOutcome::Found {
                        array,
                        candidate_index,
                    }
                }
                None if budget_hit || self.state.next_index < len => {
                    let stage = StageResult {
                        l,
                        outcome: StageOutcome::BudgetExceeded,
                        candidates_examined: self.state.stage_examined,
                        elapsed: self.state.stage_elapsed,
                    };
                    on_stage(&stage);
                    let mut outcome = self.outcome(Some(StopReason::Budget));
                    outcome.stages.push(stage);
                    return Ok(outcome);
                }
                None => StageOutcome::Exhausted,
            };
            let exhausted = outcome == StageOutcome::Exhausted;
            let stage = StageResult {
                l,
                outcome,
                candidates_examined: self.state.stage_examined,
                elapsed: self.state.stage_elapsed,
            };
            on_stage(&stage);
            self.finish_stage(stage)?;
            if exhausted {
                return Ok(self.outcome(None));
            }
        }
    }

    fn finish_stage(&mut self, stage: StageResult) -> Result<()> {
        self.state.stages.push(stage);
        self.state.l += 1;
        self.state.next_index = 0;
        self.state.stage_examined = 0;
        self.state.stage_elapsed = Duration::ZERO;
        self.save()
    }

    fn outcome(&self, stopped: Option<StopReason>) -> SearchOutcome {
        let best = self
            .state
            .stages
            .iter()
            .rev()
            .find_map(|s| s.found().map(|a| (s.l, a.clone())));
        let verdict = match (&best, stopped) {
            (None, _) => Verdict::NoneFound,
            (Some((l, _)), None) => Verdict::Optimal { aperture: *l },
            (Some((l, _)), Some(reason)) => Verdict::NearOptimal {
                aperture: *l,
                reason,
            },
        };
        SearchOutcome {
            n: self.cfg.n,
            stages: self.state.stages.clone(),
            verdict,
            best_array: best.map(|(_, a)| a),
        }
    }
}

/// Runs a single stage from its first candidate.
pub fn run_stage(n: usize, l: u32, cfg: &SearchConfig) -> Result<StageResult> {
    let cfg = SearchConfig {
        n,
        l_start: Some(l),
        l_limit: Some(l),
        checkpoint_path: None,
        ..cfg.clone()
    };
    let mut search = Search::new(cfg)?;
    let mut last = None;
    search.run(|s| last = Some(s.clone()))?;
    Ok(last.expect("a stage always reports"))
}

/// Runs the full staged search described by `cfg`.
pub fn loses_search(cfg: SearchConfig) -> Result<SearchOutcome> {
    loses_search_with(cfg, |_| {})
}

pub fn loses_search_with(
    cfg: SearchConfig,
    on_stage: impl FnMut(&StageResult),
) -> Result<SearchOutcome> {
    Search::new_or_resume(cfg)?.run(on_stage)
}

//! Verification suites: worked examples, randomized checks of proved
//! statements, and a search for modules with `dim S/ann N > dim N`.
//!
//! Trial `t` draws from its own ChaCha stream `(seed, t)`, and outcomes are
//! collected in trial order, so a report depends only on its config.

mod gorenstein;
mod known;
mod main_theorem;
pub mod sample;
mod search;
mod special;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ext::{beta_to_extension, counterexample_check, cyclic_counterexample_check, ExtError};
use crate::field::FieldSpec;
use crate::io::{BetaFile, IoError, ModuleFile, ModuleSource, ModuleSpec};
use crate::module::DEFAULT_DEGREE_CAP;

pub use gorenstein::suite_gorenstein;
pub use known::{four_matrix_module, four_matrix_pair, reproduce_known, small_extension};
pub use main_theorem::suite_main_theorem;
pub use search::{search_counterexamples, shrink_module, suite_gerstenhaber_pairs, suite_oracle_equivalence};
pub use special::{curve_instance, dependence_rank, suite_special_case, SpecialCaseInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub nvars: usize,
    pub field: FieldSpec,
    pub max_dim: usize,
    pub max_degree: u32,
    pub trials: usize,
    pub seed: u64,
    #[serde(default = "default_cap")]
    pub degree_cap: u32,
}

fn default_cap() -> u32 {
    DEFAULT_DEGREE_CAP
}

impl TrialConfig {
    pub fn new(nvars: usize, field: FieldSpec, max_dim: usize, trials: usize, seed: u64) -> Self {
        TrialConfig {
            nvars,
            field,
            max_dim,
            max_degree: 2,
            trials,
            seed,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }

    /// The random stream of one trial.
    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }
}

/// How to run a suite; none of this affects the report apart from `timing`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `0` lets rayon decide.
    pub threads: usize,
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            threads: 0,
            timing: true,
        }
    }
}

/// A must-pass assertion that failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub trial: Option<u64>,
    pub check: String,
    pub detail: String,
}

/// Everything needed to recompute a violated inequality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `dim S/ann N > dim N`.
    Module { module: ModuleFile },
    /// The extension defined by `beta` has `dim S/ann N > dim N`.
    Extension { beta: BetaFile },
    /// `dim S/ann M + dim b(ann M) > dim M + 1`.
    Pair { beta: BetaFile },
    /// `dim b(I) > 1` for a map into `S/I` (the target is an ideal file).
    Cyclic { beta: BetaFile },
    /// `b'(g)` and `b'(h)` independent after localizing `S/(J + (h))`.
    Dependence { instance: SpecialCaseInstance, h: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: Option<u64>,
    pub inequality: String,
    pub lhs: usize,
    pub rhs: usize,
    pub witness: Witness,
    /// A smaller module with `dim S/ann N > dim N`, when shrinking applies.
    pub shrunk: Option<ModuleFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub total_us: u64,
    pub mean_trial_us: u64,
    pub max_trial_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: TrialConfig,
    pub trials_run: usize,
    /// Trials whose instance met the suite's preconditions.
    pub accepted: usize,
    /// Trials skipped, e.g. because a quotient exceeded the degree cap.
    pub skipped: usize,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub violations: Vec<Violation>,
    pub stats: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteStatus {
    Passed,
    /// Every must-pass check held, and violations were archived.
    ViolationsFound,
    Failed,
}

impl SuiteReport {
    fn empty(suite: &str, config: &TrialConfig) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            config: config.clone(),
            trials_run: 0,
            accepted: 0,
            skipped: 0,
            checks: 0,
            failures: Vec::new(),
            violations: Vec::new(),
            stats: BTreeMap::new(),
            timing: None,
        }
    }

    pub fn status(&self) -> SuiteStatus {
        if !self.failures.is_empty() {
            SuiteStatus::Failed
        } else if !self.violations.is_empty() {
            SuiteStatus::ViolationsFound
        } else {
            SuiteStatus::Passed
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn absorb(&mut self, t: TrialOutcome) {
        self.accepted += t.accepted as usize;
        self.skipped += t.skipped as usize;
        self.checks += t.checks;
        self.failures.extend(t.failures);
        self.violations.extend(t.violations);
        for (k, v) in t.stats {
            *self.stats.entry(k).or_default() += v;
        }
    }
}

#[derive(Debug, Default)]
pub(crate) struct TrialOutcome {
    trial: Option<u64>,
    accepted: bool,
    skipped: bool,
    checks: usize,
    failures: Vec<Failure>,
    violations: Vec<Violation>,
    stats: BTreeMap<String, usize>,
}

impl TrialOutcome {
    fn new(trial: Option<u64>) -> Self {
        TrialOutcome {
            trial,
            ..Default::default()
        }
    }

    fn skip(mut self, reason: &str) -> Self {
        self.skipped = true;
        self.count(reason);
        self
    }

    fn count(&mut self, key: &str) {
        *self.stats.entry(key.to_string()).or_default() += 1;
    }

    /// Record a must-pass check.
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                trial: self.trial,
                check: name.to_string(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, name: &str, e: impl std::fmt::Display) {
        self.check(name, false, || e.to_string());
    }

    /// Archive a violation of a proved statement. Over an infinite field it
    /// is also a failure; over a finite field the proofs do not all apply.
    fn theorem_violation(&mut self, field: FieldSpec, v: Violation) {
        if field.is_infinite() {
            self.failures.push(Failure {
                trial: self.trial,
                check: v.inequality.clone(),
                detail: format!("{} > {}", v.lhs, v.rhs),
            });
        }
        self.violation(v);
    }

    fn violation(&mut self, mut v: Violation) {
        v.trial = self.trial;
        self.violations.push(v);
    }
}

fn run_trials<F>(suite: &str, cfg: &TrialConfig, opts: RunOptions, prelude: Vec<TrialOutcome>, trial: F) -> SuiteReport
where
    F: Fn(u64, &mut ChaCha8Rng) -> TrialOutcome + Sync,
{
    let start = Instant::now();
    let run = |t: u64| {
        let mut rng = cfg.rng(t);
        let s = Instant::now();
        let out = trial(t, &mut rng);
        (out, s.elapsed())
    };
    let indices: Vec<u64> = (0..cfg.trials as u64).collect();
    let outcomes: Vec<(TrialOutcome, Duration)> = match rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
    {
        Ok(pool) => pool.install(|| indices.par_iter().map(|&t| run(t)).collect()),
        Err(_) => indices.iter().map(|&t| run(t)).collect(),
    };
    let mut report = SuiteReport::empty(suite, cfg);
    for p in prelude {
        report.absorb(p);
    }
    report.trials_run = outcomes.len();
    let mut max = Duration::ZERO;
    for (o, d) in outcomes {
        max = max.max(d);
        report.absorb(o);
    }
    if opts.timing {
        let total = start.elapsed();
        report.timing = Some(Timing {
            total_us: total.as_micros() as u64,
            mean_trial_us: if report.trials_run == 0 {
                0
            } else {
                (total.as_micros() / report.trials_run as u128) as u64
            },
            max_trial_us: max.as_micros() as u64,
        });
    }
    report
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error("replayed {got:?}, recorded {recorded:?}")]
    Mismatch {
        recorded: (usize, usize),
        got: (usize, usize),
    },
    #[error("shrunk module has algebra dimension {algebra_dim} <= dimension {dim}")]
    ShrunkHolds { algebra_dim: usize, dim: usize },
}

/// Recompute `(lhs, rhs)` of a witness from its serialization.
pub fn replay_witness(w: &Witness) -> Result<(usize, usize), ReplayError> {
    let here = Path::new(".");
    match w {
        Witness::Module { module } => {
            let m = module.to_module()?;
            Ok((m.algebra_dimension(), m.dim()))
        }
        Witness::Extension { beta } => {
            let b = beta.load(here, DEFAULT_DEGREE_CAP)?.beta;
            let n = beta_to_extension(&b)?.total;
            Ok((n.algebra_dimension(), n.dim()))
        }
        Witness::Pair { beta } => {
            let r = counterexample_check(&beta.load(here, DEFAULT_DEGREE_CAP)?.beta)?;
            Ok((r.lhs, r.rhs))
        }
        Witness::Cyclic { beta } => {
            let loaded = beta.load(here, DEFAULT_DEGREE_CAP)?;
            let ring = loaded.ring.ok_or_else(|| {
                IoError::Shape("cyclic witness needs an ideal file as its target".into())
            })?;
            let r = cyclic_counterexample_check(&ring, &loaded.beta)?;
            Ok((r.lhs, r.rhs))
        }
        Witness::Dependence { instance, h } => {
            let rank = dependence_rank(instance, h, DEFAULT_DEGREE_CAP)?;
            Ok((rank, 1))
        }
    }
}

/// Replay a violation: the recorded numbers must come back exactly, and a
/// shrunk module must still violate `dim S/ann N <= dim N`.
pub fn replay(v: &Violation) -> Result<(), ReplayError> {
    let got = replay_witness(&v.witness)?;
    if got != (v.lhs, v.rhs) {
        return Err(ReplayError::Mismatch {
            recorded: (v.lhs, v.rhs),
            got,
        });
    }
    if let Some(s) = &v.shrunk {
        let m = s.to_module()?;
        let (algebra_dim, dim) = (m.algebra_dimension(), m.dim());
        if algebra_dim <= dim {
            return Err(ReplayError::ShrunkHolds { algebra_dim, dim });
        }
    }
    Ok(())
}

/// `BetaFile` for a map into an explicit module.
fn beta_file(beta: &crate::ext::BetaMap) -> BetaFile {
    BetaFile::from_beta(beta, None)
}

fn ideal_beta_file(beta: &crate::ext::BetaMap, ideal: &crate::poly::IdealGens) -> BetaFile {
    let f = BetaFile::from_beta(beta, Some(ideal));
    debug_assert!(matches!(f.module, ModuleSource::Inline(ModuleSpec::Ideal(_))));
    f
}

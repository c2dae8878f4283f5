//! Suite reports and the parallel case runner.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Label {
    /// The statement is a theorem; any failure is an implementation bug.
    TheoremBacked,
    /// The statement is open; a refutation is a finding, not a failure.
    ConjectureProbe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub case: String,
    pub check: String,
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

/// The size of an exhaustive universe together with its closed-form count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Universe {
    pub description: String,
    pub enumerated: u64,
    pub formula: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub suite: String,
    pub label: Label,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
    pub parameters: BTreeMap<String, String>,
    pub universe: Vec<Universe>,
    pub cases_run: u64,
    pub cases_passed: u64,
    pub checks: u64,
    pub failures: Vec<Failure>,
    /// Conjecture-probe counterexamples, each replayable from its inputs.
    pub refutations: Vec<Failure>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str, label: Label) -> Self {
        SuiteReport {
            schema: SCHEMA,
            suite: suite.to_string(),
            label,
            seed: None,
            trials: None,
            parameters: BTreeMap::new(),
            universe: Vec::new(),
            cases_run: 0,
            cases_passed: 0,
            checks: 0,
            failures: Vec::new(),
            refutations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn seeded(mut self, seed: u64, trials: Option<u64>) -> Self {
        self.seed = Some(seed);
        self.trials = trials;
        self
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Records an exhaustive universe; a count mismatch is a failure.
    pub fn universe(&mut self, description: &str, enumerated: u64, formula: u64) {
        if enumerated != formula {
            self.failures.push(Failure {
                case: "universe".into(),
                check: description.into(),
                inputs: String::new(),
                expected: formula.to_string(),
                got: enumerated.to_string(),
            });
        }
        self.universe.push(Universe { description: description.into(), enumerated, formula });
    }

    pub fn absorb(&mut self, results: Vec<CaseResult>) {
        for r in results {
            self.cases_run += 1;
            self.checks += r.checks;
            if r.failures.is_empty() {
                self.cases_passed += 1;
            }
            self.failures.extend(r.failures);
            self.refutations.extend(r.refutations);
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases_passed == self.cases_run
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

/// The outcome of one case: how many checks ran and which failed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseResult {
    pub id: String,
    pub checks: u64,
    pub failures: Vec<Failure>,
    pub refutations: Vec<Failure>,
}

impl CaseResult {
    pub fn new(id: impl Into<String>) -> Self {
        CaseResult { id: id.into(), ..Default::default() }
    }

    /// Counts one check and records a failure when `ok` is false.
    pub fn check(
        &mut self,
        name: &str,
        ok: bool,
        inputs: impl FnOnce() -> String,
        expected: impl ToString,
        got: impl ToString,
    ) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                case: self.id.clone(),
                check: name.into(),
                inputs: inputs(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    /// Equality check with both sides rendered on failure.
    pub fn check_eq<T: PartialEq + std::fmt::Display>(
        &mut self,
        name: &str,
        inputs: impl FnOnce() -> String,
        expected: &T,
        got: &T,
    ) {
        let ok = expected == got;
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                case: self.id.clone(),
                check: name.into(),
                inputs: inputs(),
                expected: expected.to_string(),
                got: got.to_string(),
            });
        }
    }

    pub fn fail(&mut self, name: &str, inputs: String, message: impl ToString) {
        self.checks += 1;
        self.failures.push(Failure {
            case: self.id.clone(),
            check: name.into(),
            inputs,
            expected: "ok".into(),
            got: message.to_string(),
        });
    }

    pub fn refute(&mut self, name: &str, inputs: String, witness: String) {
        self.refutations.push(Failure {
            case: self.id.clone(),
            check: name.into(),
            inputs,
            expected: "stable".into(),
            got: witness,
        });
    }
}

/// Runs cases on a dedicated pool. Results come back in input order, so
/// reports do not depend on the thread count.
pub struct Runner {
    pool: rayon::ThreadPool,
    jobs: usize,
}

impl Runner {
    pub fn new(jobs: usize) -> anyhow::Result<Self> {
        let jobs = jobs.max(1);
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
        Ok(Runner { pool, jobs })
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }

    pub fn map<C, R, F>(&self, cases: &[C], f: F) -> Vec<R>
    where
        C: Sync,
        R: Send,
        F: Fn(&C) -> R + Sync + Send,
    {
        self.pool.install(|| cases.par_iter().map(f).collect())
    }
}

//! Verification suites. Each runs a family of cases through a [`Runner`]
//! and returns a [`SuiteReport`]; reports depend only on the parameters,
//! never on the thread count.

pub mod apolarity;
pub mod engines;
pub mod eulerian;
pub mod identities;
pub mod inequalities;
pub mod mmcpc;

use std::collections::BTreeSet;

use stableperm_core::{Polynomial, VariableId};

use crate::io::MatrixInput;
use crate::report::{Runner, SuiteReport};

/// Flags shared by every suite. `None` selects the suite's desk-scale
/// default.
#[derive(Clone, Debug, Default)]
pub struct SuiteParams {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub v: Option<Vec<usize>>,
    pub seed: u64,
    /// Lines per polynomial for stability sampling.
    pub trials: Option<u64>,
    /// Size of the random matrix corpus.
    pub count: Option<u64>,
    /// Points per variable pair for Rayleigh checks.
    pub points: Option<u64>,
    pub input: Option<MatrixInput>,
}

pub const DEFAULT_TRIALS: u64 = 64;
pub const DEFAULT_POINTS: u64 = 1000;

impl SuiteParams {
    pub fn trials(&self) -> u64 {
        self.trials.unwrap_or(DEFAULT_TRIALS)
    }

    pub fn points(&self) -> u64 {
        self.points.unwrap_or(DEFAULT_POINTS)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Recurrence,
    AlphaRecurrence,
    Duality,
    ZToY,
    Mmcpc,
    KIdentities,
    KConjecture,
    Eulerian,
    MultisetEulerian,
    TopInequality,
    Inequalities,
    Apolarity,
    Engines,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Recurrence,
        Suite::AlphaRecurrence,
        Suite::Duality,
        Suite::ZToY,
        Suite::Mmcpc,
        Suite::KIdentities,
        Suite::KConjecture,
        Suite::Eulerian,
        Suite::MultisetEulerian,
        Suite::TopInequality,
        Suite::Inequalities,
        Suite::Apolarity,
        Suite::Engines,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Recurrence => "recurrence",
            Suite::AlphaRecurrence => "alpha-recurrence",
            Suite::Duality => "duality",
            Suite::ZToY => "z-to-y",
            Suite::Mmcpc => "mmcpc",
            Suite::KIdentities => "k-identities",
            Suite::KConjecture => "k-conjecture",
            Suite::Eulerian => "eulerian",
            Suite::MultisetEulerian => "multiset-eulerian",
            Suite::TopInequality => "top-inequality",
            Suite::Inequalities => "inequalities",
            Suite::Apolarity => "apolarity",
            Suite::Engines => "engines",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    match suite {
        Suite::Recurrence => identities::recurrence(params, runner),
        Suite::AlphaRecurrence => identities::alpha_recurrence(params, runner),
        Suite::Duality => identities::duality(params, runner),
        Suite::ZToY => identities::z_to_y(params, runner),
        Suite::Mmcpc => mmcpc::mmcpc(params, runner),
        Suite::KIdentities => identities::k_identities(params, runner),
        Suite::KConjecture => identities::k_conjecture(params, runner),
        Suite::Eulerian => eulerian::eulerian(params, runner),
        Suite::MultisetEulerian => eulerian::multiset_eulerian(params, runner),
        Suite::TopInequality => eulerian::top_inequality(params, runner),
        Suite::Inequalities => inequalities::inequalities(params, runner),
        Suite::Apolarity => apolarity::apolarity(params, runner),
        Suite::Engines => engines::engines(params, runner),
    }
}

/// Derived seed for item `index` of a random corpus.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    seed ^ (index + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// `C(n, k)` as an integer, for universe sizes.
pub fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Exchanges the `x` and `y` families, leaving every other variable alone.
pub fn swap_xy(p: &Polynomial) -> Polynomial {
    use stableperm_core::Namespace;
    p.rename(|v| match v.namespace {
        Namespace::X => VariableId::y(v.index),
        Namespace::Y => VariableId::x(v.index),
        _ => v,
    })
}

/// `{z_1, ..., z_n}`.
pub fn z_set(n: usize) -> BTreeSet<VariableId> {
    (1..=n as u32).map(VariableId::z).collect()
}

/// `{y_1, ..., y_n}`.
pub fn y_set(n: usize) -> BTreeSet<VariableId> {
    (1..=n as u32).map(VariableId::y).collect()
}

/// The lone variable `z` used for diagonals.
pub fn diagonal_var() -> VariableId {
    VariableId::z(0)
}

//! Command-line front end. Results go to stdout, diagnostics and wall time
//! to stderr. Exit codes: 0 pass, 1 usage or input error, 2 failures, 3
//! conjecture-probe refutation.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stableperm_core::apolarity::{apolar_complement, apolarity_form, mobius_transform, MobiusMap};
use stableperm_core::combinatorics::{
    descent_top_poly_direct, multiset_descent_poly_direct, rlmin_descent_poly_direct, shifted_descent_poly_direct,
    Permutation,
};
use stableperm_core::permanent::{Engine, Mode, PermanentRequest, RequestMatrix};
use stableperm_core::stability::{
    rayleigh_check, real_rooted, stability_sample_test, RayleighConfig, SamplingConfig, StabilityVerdict, VerdictKind,
    Witness,
};
use stableperm_core::{AlphaWeight, MonotoneColumnMatrix, Polynomial, Rational, UnivariatePolynomial, VariableId};

use crate::grace::{run_grace_demo, GraceConfig, Region};
use crate::io::{f64_field, rational_field, rational_list, read_json, read_matrix, read_polynomial, InputError};
use crate::report::{Label, Runner, SuiteReport, SCHEMA};
use crate::suites::{diagonal_var, run_suite, Suite, SuiteParams};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURES: i32 = 2;
pub const EXIT_REFUTED: i32 = 3;

/// Size limits for the exponential operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest `n` for permutation enumeration of permanents.
    pub perm_enumeration: usize,
    /// Largest `n` for walks over `S_n`.
    pub factorial_enumeration: usize,
    /// Largest `n` for permanents with polynomial entries.
    pub symbolic_n: usize,
}

pub const CAPS: Caps = Caps { perm_enumeration: 10, factorial_enumeration: 9, symbolic_n: 8 };

#[derive(Debug, Parser)]
#[command(name = "stableperm", version, about = "Exact permanents, stability checks and identity verification")]
pub struct Cli {
    /// Worker threads for suites; output does not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Permanent, k-permanent or alpha-permanent of a matrix file.
    Perm(PermArgs),
    /// The polynomial per(z_j + a_ij) of a monotone column matrix.
    McpPoly(McpArgs),
    /// Real-rootedness, line sampling or Rayleigh check of a polynomial file.
    CheckStability(StabilityArgs),
    /// Statistics of a permutation.
    Stats(StatsArgs),
    /// Eulerian-type generating polynomials by enumeration.
    Eulerian(EulerianArgs),
    /// Apolarity form, complements, Möbius transforms and the root-location demo.
    Apolar(ApolarArgs),
    /// Run a verification suite, or all of them.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineName {
    Auto,
    Enumerate,
    SubsetDp,
    Ryser,
}

impl From<EngineName> for Engine {
    fn from(e: EngineName) -> Engine {
        match e {
            EngineName::Auto => Engine::Auto,
            EngineName::Enumerate => Engine::Enumerate,
            EngineName::SubsetDp => Engine::SubsetDp,
            EngineName::Ryser => Engine::InclusionExclusion,
        }
    }
}

#[derive(Debug, Args)]
pub struct PermArgs {
    /// Matrix file (JSON or CSV).
    #[arg(long)]
    pub input: PathBuf,
    /// Sum of permanents of all k x k submatrices.
    #[arg(long)]
    pub k: Option<usize>,
    /// Alpha-permanent; without a value alpha stays symbolic.
    #[arg(long, num_args = 0..=1, default_missing_value = "alpha", value_name = "VALUE")]
    pub alpha: Option<String>,
    #[arg(long, value_enum, default_value_t = EngineName::Auto)]
    pub engine: EngineName,
}

#[derive(Debug, Args)]
pub struct McpArgs {
    /// Monotone column matrix file (JSON or CSV).
    #[arg(long)]
    pub input: PathBuf,
    /// k-permanent of J Z + A instead of the permanent.
    #[arg(long)]
    pub k: Option<usize>,
    /// Set every z_j = z and certify real-rootedness.
    #[arg(long)]
    pub diagonal: bool,
}

#[derive(Debug, Args)]
pub struct StabilityArgs {
    /// Polynomial text file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Rayleigh check on a variable pair instead of line sampling.
    #[arg(long, value_name = "VAR,VAR")]
    pub rayleigh: Option<String>,
    /// Sample points for the Rayleigh check.
    #[arg(long, default_value_t = 1000)]
    pub points: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    /// One-line notation, e.g. 341526978 or 3,1,2.
    #[arg(long)]
    pub perm: String,
}

#[derive(Debug, Args)]
pub struct EulerianArgs {
    #[arg(long)]
    pub n: Option<usize>,
    /// Composition for the multiset polynomial, e.g. 2,1,2.
    #[arg(long, alias = "multiset", value_delimiter = ',')]
    pub v: Option<Vec<usize>>,
    /// Count sigma(i) > sigma(i+1) + j - 1 instead of descents.
    #[arg(long)]
    pub shift: Option<usize>,
    /// Weight by alpha^(right-to-left minima).
    #[arg(long)]
    pub alpha: bool,
    /// Set every y_j = z.
    #[arg(long)]
    pub diagonal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ApolarOp {
    Form,
    Complement,
    Mobius,
    GraceDemo,
}

#[derive(Debug, Args)]
pub struct ApolarArgs {
    #[arg(value_enum)]
    pub op: ApolarOp,
    /// JSON input; see the README for the fields of each operation.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    pub suite: String,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Composition, e.g. 2,1,2.
    #[arg(long, value_delimiter = ',')]
    pub v: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Lines per polynomial for stability sampling.
    #[arg(long)]
    pub trials: Option<u64>,
    /// Size of the random corpus.
    #[arg(long)]
    pub count: Option<u64>,
    /// Points per variable pair for Rayleigh checks.
    #[arg(long)]
    pub points: Option<u64>,
    /// Matrix file replacing the suite's corpus.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Parses `args` and runs the command. Output goes to `out`.
pub fn run_with<I, T>(args: I, out: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let start = Instant::now();
    let code = match dispatch(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    };
    eprintln!("wall time: {:.3} s", start.elapsed().as_secs_f64());
    code
}

fn dispatch(cli: &Cli, out: &mut dyn std::io::Write) -> anyhow::Result<i32> {
    match &cli.command {
        Command::Perm(a) => perm(a, out),
        Command::McpPoly(a) => mcp_poly(a, out),
        Command::CheckStability(a) => check_stability(a, out),
        Command::Stats(a) => stats(a, out),
        Command::Eulerian(a) => eulerian(a, out),
        Command::Apolar(a) => apolar(a, out),
        Command::Verify(a) => verify(a, cli.jobs, out),
    }
}

fn check_cap(n: usize, cap: usize, what: &str) -> anyhow::Result<()> {
    if n > cap {
        bail!("{what}: n = {n} exceeds the cap {cap}");
    }
    Ok(())
}

fn parse_alpha(s: &str) -> anyhow::Result<AlphaWeight> {
    if s == "alpha" {
        return Ok(AlphaWeight::Symbolic(VariableId::alpha()));
    }
    let p: Polynomial = s.parse().map_err(|e| anyhow!("--alpha: {e}"))?;
    p.as_constant().map(AlphaWeight::Value).ok_or_else(|| anyhow!("--alpha: expected a rational value"))
}

fn perm(a: &PermArgs, out: &mut dyn std::io::Write) -> anyhow::Result<i32> {
    let input = read_matrix(&a.input)?;
    let matrix = match input.to_rational() {
        Some(m) => RequestMatrix::Numeric(m),
        None => {
            let m = input.to_symbolic();
            check_cap(m.rows().max(m.cols()), CAPS.symbolic_n, "symbolic permanent")?;
            RequestMatrix::Symbolic(m)
        }
    };
    let mode = match (&a.k, &a.alpha) {
        (Some(_), Some(_)) => bail!("--k and --alpha are exclusive"),
        (Some(k), None) => Mode::KSub(*k),
        (None, Some(s)) => Mode::Alpha(parse_alpha(s)?),
        (None, None) => Mode::Full,
    };
    let n = match &matrix {
        RequestMatrix::Numeric(m) => m.rows().max(m.cols()),
        RequestMatrix::Symbolic(m) => m.rows().max(m.cols()),
    };
    if a.engine == EngineName::Enumerate || matches!(mode, Mode::Alpha(_)) {
        check_cap(n, CAPS.perm_enumeration, "permutation enumeration")?;
    }
    let p = PermanentRequest { matrix, mode, engine: a.engine.into() }.compute()?;
    writeln!(out, "{p}")?;
    Ok(EXIT_PASS)
}

fn mcp_poly(a: &McpArgs, out: &mut dyn std::io::Write) -> anyhow::Result<i32> {
    let m: MonotoneColumnMatrix = read_matrix(&a.input)?.to_monotone()?;
    check_cap(m.rows().max(m.cols()), CAPS.symbolic_n, "symbolic permanent")?;
    let jz = m.jz_plus_a();
    let p = match a.k {
        Some(k) => stableperm_core::permanent::k_permanent(&jz, k)?,
        None => stableperm_core::permanent::permanent_symbolic(&jz)?,
    };
    if !a.diagonal {
        writeln!(out, "{p}")?;
        return Ok(EXIT_PASS);
    }
    let d = p.diagonalize(&crate::suites::z_set(m.cols()), diagonal_var());
    let u = d.to_univariate(diagonal_var())?;
    let ok = real_rooted(&u);
    writeln!(out, "{d}")?;
    writeln!(out, "real_rooted: {ok}")?;
    Ok(if ok { EXIT_PASS } else { EXIT_FAILURES })
}

fn verdict_json(v: &StabilityVerdict) -> Value {
    let kind = match v.kind {
        VerdictKind::CertifiedRealRooted => "certified-real-rooted",
        VerdictKind::PassedSampling => "passed-sampling",
        VerdictKind::Refuted => "refuted",
    };
    let strs = |xs: &[Rational]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let names = |vs: &[VariableId]| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>();
    let witness = match &v.witness {
        None => Value::Null,
        Some(Witness::Line { trial, variables, base, direction }) => json!({
            "kind": "line", "trial": trial, "variables": names(variables), "base": strs(base), "direction": strs(direction)
        }),
        Some(Witness::Point { index, variables, point, value_sign }) => json!({
            "kind": "point", "index": index, "variables": names(variables), "point": strs(point), "sign": value_sign
        }),
        Some(Witness::Univariate) => json!({ "kind": "univariate" }),
    };
    json!({ "schema": SCHEMA, "verdict": kind, "seed": v.seed, "trials": v.trials, "witness": witness })
}

fn emit(value: &Value, report: Option<&Path>, out: &mut dyn std::io::Write) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match report {
        Some(path) => fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
        None => writeln!(out, "{text}")?,
    }
    Ok(())
}

fn check_stability(a: &StabilityArgs, out: &mut dyn std::io::Write) -> anyhow::Result<i32> {
    let p = read_polynomial(&a.input)?;
    let v = match &a.rayleigh {
        Some(pair) => {
            let vars: Vec<VariableId> = pair
                .split(',')
                .map(|s| s.trim().parse().map_err(|e| anyhow!("--rayleigh: {e}")))
                .collect::<Result<_, _>>()?;
            let [i, j] = vars[..] else { bail!("--rayleigh: expected two variables, e.g. z1,z2") };
            let cfg = RayleighConfig { points: a.points, seed: a.seed, ..RayleighConfig::default() };
            rayleigh_check(&p, i, j, &cfg)?
        }
        None => {
            stability_sample_test(&p, &SamplingConfig { trials: a.trials, seed: a.seed, ..SamplingConfig::default() })
        }
    };
    emit(&verdict_json(&v), a.report.as_deref(), out)?;
    Ok(if v.passed() { EXIT_PASS } else { EXIT_FAILURES })
}

fn stats(a: &StatsArgs, out: &mut dyn std::io::Write) -> anyhow::Result<i32> {
    let p: Permutation = a.perm.parse().map_err(|e| anyhow!("--perm: {e}"))?;
    let s = p.stats();
    let v = json!({
        "perm": p.to_string(),
        "exc": s.exc,
        "des": s.des,
        "cyc": s.cyc,
        "descent_tops": s.descent_tops,
        "lr_minima": s.lr_minima,
        "rl_minima": s.rl_minima,
    });
    writeln!(out, "{}", serde_json::to_string(&v)?)?;
    Ok(EXIT_PASS)
}

fn eulerian(a: &EulerianArgs, out: &mut dyn std::io::Write) -> anyhow::Result<i32> {
    let (p, vars) = match (&a.v, a.n) {
        (Some(v), _) => {
            check_cap(v.iter().sum(), CAPS.factorial_enumeration, "multiset enumeration")?;
            (multiset_descent_poly_direct(v)?, v.len())
        }
        (None, Some(n)) => {
            check_cap(n, CAPS.factorial_enumeration, "permutation enumeration")?;
            let p = match (a.shift, a.alpha) {
                (Some(_), true) => bail!("--shift and --alpha are exclusive"),
                (Some(j), false) => shifted_descent_poly_direct(n, j)?,
                (None, true) => rlmin_descent_poly_direct(n)?,
                (None, false) => descent_top_poly_direct(n)?,
            };
            (p, n)
        }
        (None, None) => bail!("give --n or --v"),
    };
    if a.diagonal {
        let d = p.diagonalize(&crate::suites::y_set(vars), diagonal_var());
        writeln!(out, "{d}")?;
        if let Ok(u) = d.to_univariate(diagonal_var()) {
            writeln!(out, "real_rooted: {}", real_rooted(&u))?;
        }
    } else {
        writeln!(out, "{p}")?;
    }
    Ok(EXIT_PASS)
}

/// A univariate polynomial from `{"coeffs": [c0, c1, ...]}` (constant term
/// first) or `{"roots": [...], "lead": c}`.
fn poly_field(v: &Value, field: &str) -> Result<UnivariatePolynomial, InputError> {
    let missing = || InputError::Field { field: field.into(), message: "expected {\"coeffs\"} or {\"roots\"}".into() };
    let obj = v.get(field).ok_or_else(missing)?;
    if let Some(c) = obj.get("coeffs") {
        return Ok(UnivariatePolynomial::new(rational_list(c, &format!("{field}.coeffs"))?));
    }
    if let Some(r) = obj.get("roots") {
        let roots = rational_list(r, &format!("{field}.roots"))?;
        let lead = match obj.get("lead") {
            Some(l) => rational_field(l, &format!("{field}.lead"))?,
            None => stableperm_core::rat(1),
        };
        return Ok(UnivariatePolynomial::from_roots(&lead, &roots));
    }
    Err(missing())
}

fn read_input(path: &Option<PathBuf>) -> anyhow::Result<Value> {
    match path {
        Some(p) => Ok(read_json(p)?),
        None => Ok(json!({})),
    }
}

fn region_field(v: &Value) -> Result<Region, InputError> {
    let pair = |x: &Value, f: &str| -> Result<(f64, f64), InputError> {
        let a = x
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or(InputError::Field { field: f.into(), message: "expected [x, y]".into() })?;
        Ok((f64_field(&a[0], &format!("{f}[0]"))?, f64_field(&a[1], &format!("{f}[1]"))?))
    };
    if let Some(d) = v.get("disk") {
        let center = pair(d.get("center").unwrap_or(&json!([0.0, 0.0])), "disk.center")?;
        let radius = f64_field(d.get("radius").unwrap_or(&json!(1.0)), "disk.radius")?;
        return Ok(Region::Disk { center, radius });
    }
    if let Some(h) = v.get("half_plane") {
        let point = pair(h.get("point").unwrap_or(&Value::Null), "half_plane.point")?;
        let normal = pair(h.get("normal").unwrap_or(&Value::Null), "half_plane.normal")?;
        return Ok(Region::HalfPlane { point, normal });
    }
    Ok(Region::unit_disk())
}

fn apolar(a: &ApolarArgs, out: &mut dyn std::io::Write) -> anyhow::Result<i32> {
    let v = read_input(&a.input)?;
    match a.op {
        ApolarOp::Form => {
            let (f, g) = (poly_field(&v, "f")?, poly_field(&v, "g")?);
            let form = apolarity_form(&f, &g)?;
            writeln!(out, "form: {form}")?;
            writeln!(out, "apolar: {}", form == stableperm_core::rat(0))?;
        }
        ApolarOp::Complement => {
            let g = poly_field(&v, "g")?;
            let free = rational_list(v.get("free").unwrap_or(&json!([])), "free")?;
            writeln!(out, "{}", apolar_complement(&g, &free)?)?;
        }
        ApolarOp::Mobius => {
            let f = poly_field(&v, "f")?;
            let m = rational_list(v.get("map").unwrap_or(&Value::Null), "map")?;
            let [p, q, r, s] = <[Rational; 4]>::try_from(m).map_err(|_| anyhow!("map: expected [a, b, c, d]"))?;
            writeln!(out, "{}", mobius_transform(&f, &MobiusMap::new(p, q, r, s)?)?)?;
        }
        ApolarOp::GraceDemo => {
            let mut cfg = GraceConfig { region: region_field(&v)?, ..GraceConfig::default() };
            if let Some(t) = v.get("trials") {
                cfg.trials = t
                    .as_u64()
                    .ok_or(InputError::Field { field: "trials".into(), message: "expected an integer".into() })?;
            }
            if let Some(s) = v.get("seed") {
                cfg.seed = s
                    .as_u64()
                    .ok_or(InputError::Field { field: "seed".into(), message: "expected an integer".into() })?;
            }
            if let Some(t) = v.get("tol") {
                cfg.tol = f64_field(t, "tol")?;
            }
            cfg.trials = a.trials.unwrap_or(cfg.trials);
            cfg.seed = a.seed.unwrap_or(cfg.seed);
            let report = run_grace_demo(&cfg);
            emit(&serde_json::to_value(&report)?, a.report.as_deref(), out)?;
            return Ok(if report.passed() { EXIT_PASS } else { EXIT_FAILURES });
        }
    }
    Ok(EXIT_PASS)
}

/// Exit code for a set of reports: failures beat refutations.
pub fn exit_code(reports: &[SuiteReport]) -> i32 {
    if reports.iter().any(|r| !r.passed()) {
        EXIT_FAILURES
    } else if reports.iter().any(|r| r.label == Label::ConjectureProbe && !r.refutations.is_empty()) {
        EXIT_REFUTED
    } else {
        EXIT_PASS
    }
}

fn verify(a: &VerifyArgs, jobs: usize, out: &mut dyn std::io::Write) -> anyhow::Result<i32> {
    let runner = Runner::new(jobs)?;
    let input = match &a.input {
        Some(p) => Some(read_matrix(p)?),
        None => None,
    };
    if a.suite == "all" {
        let params = SuiteParams { seed: a.seed, trials: a.trials, ..SuiteParams::default() };
        let mut reports = Vec::new();
        for s in Suite::ALL {
            let start = Instant::now();
            reports.push(run_suite(s, &params, &runner)?);
            eprintln!("{}: {:.3} s", s.name(), start.elapsed().as_secs_f64());
        }
        let value = json!({ "schema": SCHEMA, "suites": reports });
        emit(&value, a.report.as_deref(), out)?;
        return Ok(exit_code(&reports));
    }
    let suite = Suite::from_name(&a.suite).ok_or_else(|| {
        let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
        anyhow!("unknown suite {:?}; expected one of: all, {}", a.suite, names.join(", "))
    })?;
    let params = SuiteParams {
        n: a.n,
        k: a.k,
        v: a.v.clone(),
        seed: a.seed,
        trials: a.trials,
        count: a.count,
        points: a.points,
        input,
    };
    let report = run_suite(suite, &params, &runner)?;
    emit(&serde_json::to_value(&report)?, a.report.as_deref(), out)?;
    Ok(exit_code(std::slice::from_ref(&report)))
}

/// Help text for the top level and every subcommand, as checked into the
/// golden file.
pub fn full_help() -> String {
    use clap::CommandFactory;
    let mut cmd = Cli::command().term_width(100);
    let mut text = cmd.render_help().to_string();
    let names: Vec<String> = cmd.get_subcommands().map(|s| s.get_name().to_string()).collect();
    for name in names {
        let sub = cmd.find_subcommand_mut(&name).expect("listed");
        let mut sub = sub.clone().term_width(100);
        text.push_str(&format!("\n--- {name} ---\n"));
        text.push_str(&sub.render_help().to_string());
    }
    text
}

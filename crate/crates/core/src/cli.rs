//! Command-line front end. `run` parses arguments, executes the selected
//! verification and writes a JSON or CSV report; the return value is the
//! process exit code.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cluster::{
    verify_cross_backend, verify_periodicity, ExchangeRule, PeriodicityReport, SymbolicBudget, YSystem,
};
use crate::constant::{constant_frame_bridge, solve_constant, verify_level_identity, DEFAULT_MAX_ITER, DEFAULT_TOL};
use crate::dilog::{
    verify_constancy, verify_identities, zero_infinity_limit, Domain, LIMIT_ARGUMENT_FACTOR, LIMIT_SUM_REL_TOL,
    LIMIT_TS,
};
use crate::dynkin::DynkinDiagram;
use crate::error::{Error, Result};
use crate::semifield::Backend;
use crate::tropical::tropical_report;
use crate::wedge::{wedge_vanishing, WedgeContext};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const PERIODICITY_TOL: f64 = 1e-9;
pub const DILOG_TOL: f64 = 1e-8;
pub const CONSTANCY_TOL: f64 = 1e-10;
pub const CONSTANT_IDENTITY_TOL: f64 = 1e-8;

/// Pairs of the default suite: {A1..A4, D4} × {A1..A3}.
pub const DEFAULT_SUITE: [&str; 15] = [
    "A1xA1", "A1xA2", "A1xA3", "A2xA1", "A2xA2", "A2xA3", "A3xA1", "A3xA2", "A3xA3", "A4xA1", "A4xA2", "A4xA3",
    "D4xA1", "D4xA2", "D4xA3",
];

#[derive(Debug, Parser)]
#[command(name = "ysyslab", version, about = "Verify Y-system periodicity, tropical signs and dilogarithm identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sign counts N± of the tropical Y-system.
    Tropical(PairArgs),
    /// Full and half periodicity in the tropical, numeric and (within budget) symbolic backends.
    Periodicity(PairArgs),
    /// Dilogarithm sums over S±, H±.
    Dilog(DilogArgs),
    /// Constancy of the S+ sum across random assignments.
    Constancy(PairArgs),
    /// The 0/∞ limit of the S+ sum.
    Limit(PairArgs),
    /// Vanishing of Σ y∧(1+y) over S+.
    Wedge(PairArgs),
    /// Constant Y-system of level ℓ and its dilogarithm identity.
    Constant(ConstantArgs),
    /// Run every check over a list of pairs, without stopping at failures.
    All(SuiteArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Standard,
    Flipped,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Main tolerance of the command (each command has its own default).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Largest rank product rr' for symbolic computations.
    #[arg(long = "budget-rr")]
    pub budget_rr: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Coefficient exchange rule; `flipped` injects a sign error.
    #[arg(long, value_enum, default_value_t = RuleArg::Standard, hide = true)]
    pub rule: RuleArg,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub pair: String,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct DilogArgs {
    #[arg(long)]
    pub pair: String,
    /// Restrict to one of S+, S-, H+, H-.
    #[arg(long)]
    pub domain: Option<String>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct ConstantArgs {
    #[arg(long = "type")]
    pub diagram: String,
    #[arg(long)]
    pub level: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct SuiteArgs {
    /// Pairs to run (repeatable or comma separated); the default suite if omitted.
    #[arg(long, value_delimiter = ',')]
    pub pair: Vec<String>,
    /// Run no pairs at all.
    #[arg(long, conflicts_with = "pair")]
    pub empty: bool,
    #[command(flatten)]
    pub common: Common,
}

/// What every report carries so a run can be reproduced.
#[derive(Debug, Clone, Serialize)]
struct Envelope<T: Serialize> {
    command: &'static str,
    version: &'static str,
    pair: String,
    seed: u64,
    samples: usize,
    tolerances: Value,
    passed: bool,
    report: T,
}

/// One flattened row for the CSV format.
#[derive(Debug, Clone, Serialize)]
struct Row {
    command: String,
    pair: String,
    check: String,
    passed: bool,
    value: String,
}

struct Outcome {
    passed: bool,
    json: Value,
    rows: Vec<Row>,
}

impl Common {
    fn budget(&self) -> Result<SymbolicBudget> {
        let b = SymbolicBudget::from_env()?;
        Ok(match self.budget_rr {
            Some(rr) => SymbolicBudget { max_rank_product: rr, ..b },
            None => b,
        })
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Config("--samples must be at least 1".into()));
        }
        if let Some(t) = self.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Config(format!("--tol must be positive, got {t}")));
            }
        }
        Ok(())
    }

    fn system(&self, pair: &str) -> Result<YSystem> {
        let sys: YSystem = pair.parse()?;
        Ok(match self.rule {
            RuleArg::Standard => sys,
            RuleArg::Flipped => sys.with_rule(ExchangeRule::FlippedSign),
        })
    }
}

fn row(command: &str, pair: &str, check: &str, passed: bool, value: impl ToString) -> Row {
    Row {
        command: command.into(),
        pair: pair.into(),
        check: check.into(),
        passed,
        value: value.to_string(),
    }
}

fn envelope<T: Serialize>(
    command: &'static str,
    pair: String,
    c: &Common,
    tolerances: Value,
    passed: bool,
    report: T,
) -> Value {
    serde_json::to_value(Envelope {
        command,
        version: VERSION,
        pair,
        seed: c.seed,
        samples: c.samples,
        tolerances,
        passed,
        report,
    })
    .expect("reports serialize")
}

fn tropical_cmd(sys: &YSystem, c: &Common) -> Result<Outcome> {
    let r = tropical_report(sys)?;
    let p = sys.to_string();
    let rows = vec![
        row("tropical", &p, "N_plus", r.n_plus == r.expected_plus, r.n_plus),
        row("tropical", &p, "N_minus", r.n_minus == r.expected_minus, r.n_minus),
    ];
    Ok(Outcome {
        passed: r.passed,
        json: envelope("tropical", p, c, json!({}), r.passed, &r),
        rows,
    })
}

fn periodicity_cmd(sys: &YSystem, c: &Common, budget: &SymbolicBudget) -> Result<Outcome> {
    let tol = c.tol.unwrap_or(PERIODICITY_TOL);
    let mut reports: Vec<PeriodicityReport> = vec![
        verify_periodicity(sys, Backend::Tropical, 0, c.seed, 0.0, budget)?,
        verify_periodicity(sys, Backend::Numeric, c.samples, c.seed, tol, budget)?,
    ];
    let mut cross = None;
    // Without periodicity the symbolic frame grows without bound, so it
    // only confirms what the cheaper backends already passed.
    let cheap_pass = reports.iter().all(|r| r.passed);
    let symbolic_run = budget.allows(sys) && cheap_pass;
    if symbolic_run {
        reports.push(verify_periodicity(sys, Backend::Symbolic, 0, c.seed, 0.0, budget)?);
        cross = Some(verify_cross_backend(sys, budget, 0, 2 * sys.period() - 1)?);
    }
    let p = sys.to_string();
    let mut rows: Vec<Row> = reports
        .iter()
        .map(|r| row("periodicity", &p, &r.backend.to_string(), r.passed, r.full.max_error.unwrap_or(0.0)))
        .collect();
    if let Some(x) = &cross {
        rows.push(row("periodicity", &p, "cross_backend", x.passed, x.checked));
    }
    let passed = reports.iter().all(|r| r.passed) && cross.as_ref().is_none_or(|x| x.passed);
    let body = json!({ "backends": reports, "cross_backend": cross, "symbolic_skipped": !symbolic_run });
    Ok(Outcome {
        passed,
        json: envelope("periodicity", p, c, json!({ "numeric_rel": tol }), passed, body),
        rows,
    })
}

fn dilog_cmd(sys: &YSystem, domain: Option<Domain>, c: &Common) -> Result<Outcome> {
    let tol = c.tol.unwrap_or(DILOG_TOL);
    let mut suite = verify_identities(sys, c.samples, tol, c.seed)?;
    if let Some(d) = domain {
        suite.identities.retain(|r| r.domain == d);
        suite.passed = suite.identities.iter().all(|r| r.passed);
    }
    let p = sys.to_string();
    let rows = suite
        .identities
        .iter()
        .map(|r| row("dilog", &p, &r.domain.to_string(), r.passed, r.max_abs_error))
        .collect();
    Ok(Outcome {
        passed: suite.passed,
        json: envelope("dilog", p, c, json!({ "abs": tol }), suite.passed, &suite),
        rows,
    })
}

fn constancy_cmd(sys: &YSystem, c: &Common) -> Result<Outcome> {
    let tol = c.tol.unwrap_or(CONSTANCY_TOL);
    let r = verify_constancy(sys, c.samples, tol, c.seed)?;
    let p = sys.to_string();
    let rows = vec![row("constancy", &p, "range", r.passed, r.range)];
    Ok(Outcome {
        passed: r.passed,
        json: envelope("constancy", p, c, json!({ "range": tol }), r.passed, &r),
        rows,
    })
}

fn limit_cmd(sys: &YSystem, c: &Common) -> Result<Outcome> {
    let t_last = LIMIT_TS[LIMIT_TS.len() - 1];
    let arg_tol = c.tol.unwrap_or(LIMIT_ARGUMENT_FACTOR * t_last);
    let r = zero_infinity_limit(sys, &LIMIT_TS, arg_tol)?;
    let p = sys.to_string();
    let last = r.sums.last().copied().unwrap_or(f64::NAN);
    let rows = vec![row("limit", &p, "sum", r.passed, last)];
    let tols = json!({ "sum_rel": LIMIT_SUM_REL_TOL, "argument": arg_tol });
    Ok(Outcome {
        passed: r.passed,
        json: envelope("limit", p, c, tols, r.passed, &r),
        rows,
    })
}

fn wedge_cmd(sys: &YSystem, c: &Common, budget: &SymbolicBudget) -> Result<Outcome> {
    let ctx = WedgeContext::new(sys, budget)?;
    let r = wedge_vanishing(&ctx)?;
    let f = ctx.fpolys().check_properties(sys);
    let passed = r.passed && f.passed;
    let p = sys.to_string();
    let rows = vec![
        row("wedge", &p, "total", r.total_zero, r.surviving_pairs.len()),
        row("wedge", &p, "f_polynomials", f.passed, f.checked),
    ];
    let body = json!({ "wedge": r, "f_polynomials": f });
    Ok(Outcome {
        passed,
        json: envelope("wedge", p, c, json!({ "exact": true }), passed, body),
        rows,
    })
}

fn constant_cmd(a: &ConstantArgs) -> Result<Outcome> {
    let c = &a.common;
    let x: DynkinDiagram = a.diagram.parse()?;
    if a.level < 2 {
        return Err(Error::Config(format!("--level must be at least 2, got {}", a.level)));
    }
    let tol = c.tol.unwrap_or(CONSTANT_IDENTITY_TOL);
    let sol = solve_constant(&x, a.level, DEFAULT_TOL, DEFAULT_MAX_ITER)?;
    let id = verify_level_identity(&sol, tol)?;
    let bridge = constant_frame_bridge(&sol, tol)?;
    let passed = id.passed && bridge.passed && sol.residual < DEFAULT_TOL;
    let label = format!("{x} level {}", a.level);
    let rows = vec![
        row("constant", &label, "residual", sol.residual < DEFAULT_TOL, sol.residual),
        row("constant", &label, "identity", id.passed, id.identity_lhs),
        row("constant", &label, "bridge", bridge.passed, bridge.max_deviation),
    ];
    let tols = json!({ "residual": DEFAULT_TOL, "identity": tol });
    let body = json!({ "identity": id, "bridge": bridge, "iterations": sol.iterations });
    Ok(Outcome {
        passed,
        json: envelope("constant", label, c, tols, passed, body),
        rows,
    })
}

/// Per-pair result of the suite. Errors are recorded, not propagated.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub pair: String,
    pub passed: bool,
    /// Check name → pass flag, in a fixed order.
    pub checks: Vec<(String, bool)>,
    /// Full reports of the failing checks.
    pub failures: Vec<Value>,
    pub errors: Vec<String>,
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteSummary {
    pub version: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub pairs: Vec<SuiteEntry>,
}

fn suite_entry(pair: &str, c: &Common, budget: &SymbolicBudget) -> SuiteEntry {
    let mut e = SuiteEntry {
        pair: pair.to_string(),
        passed: true,
        checks: Vec::new(),
        failures: Vec::new(),
        errors: Vec::new(),
        skipped: Vec::new(),
    };
    let sys = match c.system(pair) {
        Ok(s) => s,
        Err(err) => {
            e.passed = false;
            e.errors.push(err.to_string());
            return e;
        }
    };
    e.pair = sys.to_string();
    let mut take = |name: &str, o: Result<Outcome>| match o {
        Ok(o) => {
            e.checks.push((name.to_string(), o.passed));
            if !o.passed {
                e.passed = false;
                e.failures.push(o.json);
            }
        }
        Err(err) => {
            e.passed = false;
            e.checks.push((name.to_string(), false));
            e.errors.push(format!("{name}: {err}"));
        }
    };
    take("tropical", tropical_cmd(&sys, c));
    take("periodicity", periodicity_cmd(&sys, c, budget));
    take("dilog", dilog_cmd(&sys, None, c));
    take("constancy", constancy_cmd(&sys, c));
    take("limit", limit_cmd(&sys, c));
    if budget.allows(&sys) {
        take("wedge", wedge_cmd(&sys, c, budget));
    } else {
        e.skipped.push("wedge".to_string());
    }
    e
}

/// Run the suite over `pairs` in parallel; results keep the input order.
pub fn run_suite(pairs: &[String], common: &Common) -> Result<SuiteSummary> {
    let budget = common.budget()?;
    let entries: Vec<SuiteEntry> = pairs.par_iter().map(|p| suite_entry(p, common, &budget)).collect();
    Ok(SuiteSummary {
        version: VERSION,
        seed: common.seed,
        samples: common.samples,
        passed: entries.iter().all(|e| e.passed),
        pairs: entries,
    })
}

fn suite_cmd(a: &SuiteArgs) -> Result<Outcome> {
    let pairs: Vec<String> = if a.empty {
        Vec::new()
    } else if a.pair.is_empty() {
        DEFAULT_SUITE.iter().map(|s| s.to_string()).collect()
    } else {
        a.pair.clone()
    };
    let s = run_suite(&pairs, &a.common)?;
    let rows = s
        .pairs
        .iter()
        .flat_map(|e| {
            let mut r: Vec<Row> = e.checks.iter().map(|(n, ok)| row("all", &e.pair, n, *ok, "")).collect();
            r.extend(e.errors.iter().map(|m| row("all", &e.pair, "error", false, m)));
            r
        })
        .collect();
    Ok(Outcome {
        passed: s.passed,
        json: serde_json::to_value(&s).expect("summary serializes"),
        rows,
    })
}

fn execute(cmd: &Command) -> Result<(Outcome, &Common)> {
    let common = match cmd {
        Command::Tropical(a) | Command::Periodicity(a) | Command::Constancy(a) | Command::Limit(a) | Command::Wedge(a) => {
            &a.common
        }
        Command::Dilog(a) => &a.common,
        Command::Constant(a) => &a.common,
        Command::All(a) => &a.common,
    };
    common.validate()?;
    let outcome = match cmd {
        Command::Tropical(a) => tropical_cmd(&common.system(&a.pair)?, common)?,
        Command::Periodicity(a) => periodicity_cmd(&common.system(&a.pair)?, common, &common.budget()?)?,
        Command::Dilog(a) => {
            let d = a.domain.as_deref().map(str::parse::<Domain>).transpose()?;
            dilog_cmd(&common.system(&a.pair)?, d, common)?
        }
        Command::Constancy(a) => constancy_cmd(&common.system(&a.pair)?, common)?,
        Command::Limit(a) => limit_cmd(&common.system(&a.pair)?, common)?,
        Command::Wedge(a) => wedge_cmd(&common.system(&a.pair)?, common, &common.budget()?)?,
        Command::Constant(a) => constant_cmd(a)?,
        Command::All(a) => suite_cmd(a)?,
    };
    Ok((outcome, common))
}

fn render(o: &Outcome, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_vec_pretty(&o.json).map_err(|e| Error::Io(e.to_string()))?;
            s.push(b'\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &o.rows {
                w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Error::Io(e.to_string()))
        }
    }
}

fn is_usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Config(_)
            | Error::PairSpec(_)
            | Error::DiagramSpec(_)
            | Error::InvalidDiagram { .. }
            | Error::BudgetExceeded { .. }
            | Error::InvalidRange { .. }
    )
}

/// Exit code for a parsed command: 0 all pass, 1 any failure, 2 usage,
/// configuration or budget error.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let (outcome, common) = match execute(&cli.command) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(stderr, "ysyslab: {e}");
            return if is_usage_error(&e) { 2 } else { 1 };
        }
    };
    let bytes = match render(&outcome, common.format) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "ysyslab: {e}");
            return 1;
        }
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, &bytes),
        None => stdout.write_all(&bytes),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "ysyslab: {e}");
        return 2;
    }
    i32::from(!outcome.passed)
}

/// Parse `args` (including the program name) and run.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, stdout, stderr),
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(stderr, "{}", e.render());
            if code == 0 {
                let _ = write!(stdout, "{}", e.render());
            }
            code
        }
    }
}

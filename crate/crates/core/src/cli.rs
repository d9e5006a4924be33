//! Command-line front end: `verify`, `bruteforce` and `estimate`.
//!
//! Exit codes: 0 solutions found, 10 none found, 2 input error, 3 resource
//! ceiling.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::classical::brute_force;
use crate::error::{Error, Result};
use crate::grover::{bbht_search, find_all_with, search, GroverPlan, InitSpec};
use crate::netmodel::{Mode, Problem, PropertyDoc};
use crate::oracle::{compile, Backend, ExclusionSet, OracleOptions};
use crate::resources::{
    controlplane_qubits, dataplane_qubits, sweep, to_csv, ControlPlaneParams, DataPlaneParams, Sweep,
};

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NONE_FOUND: i32 = 10;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qnwv", version, about = "Network verification as Grover search")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for property instances with Grover's algorithm.
    Verify(VerifyArgs),
    /// Enumerate every instance classically.
    Bruteforce(ProblemArgs),
    /// Print qubit counts for the reference circuits.
    Estimate(EstimateArgs),
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    #[arg(long)]
    pub network: PathBuf,
    #[arg(long)]
    pub property: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    Dataplane,
    Controlplane,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Dataplane => Mode::Dataplane,
            ModeArg::Controlplane => Mode::Controlplane,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BackendArg {
    Diagonal,
    Gate,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InitArg {
    Uniform,
    Biased,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value = "diagonal")]
    pub backend: BackendArg,
    #[arg(long, value_enum, default_value = "uniform")]
    pub init: InitArg,
    /// Probability that a qubit starts as 0 under `--init biased`.
    #[arg(long)]
    pub p: Option<f64>,
    /// Number of Grover iterates.
    #[arg(long, conflicts_with = "k_hint")]
    pub iterates: Option<u64>,
    /// Assumed solution count; sets the iterate count.
    #[arg(long)]
    pub k_hint: Option<u64>,
    /// Repeat with exclusions until no new solution appears.
    #[arg(long, conflicts_with = "bbht")]
    pub all: bool,
    /// Round budget for `--all` (default 2^n).
    #[arg(long, requires = "all")]
    pub rounds: Option<u32>,
    /// Randomised iterate schedule for an unknown solution count.
    #[arg(long, conflicts_with_all = ["iterates", "k_hint"])]
    pub bbht: bool,
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    #[arg(long)]
    pub seed: u64,
    /// Allocate fresh ancillas per hop or round instead of resetting them.
    #[arg(long)]
    pub no_reset: bool,
    /// Add a classical brute-force comparison to the report.
    #[arg(long)]
    pub compare: bool,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(value_enum)]
    pub plane: ModeArg,
    #[arg(long, default_value_t = 10)]
    pub routers: u64,
    /// Rules per router (data plane).
    #[arg(long, default_value_t = 5)]
    pub rules: u64,
    /// Total number of headers (data plane).
    #[arg(long, default_value_t = 1 << 16)]
    pub headers: u64,
    /// Unique wildcard expressions (default routers × rules).
    #[arg(long)]
    pub wildcards: Option<u64>,
    /// Unique ports (default routers × rules).
    #[arg(long)]
    pub ports: Option<u64>,
    /// Maximum hops (default routers).
    #[arg(long)]
    pub hops: Option<u64>,
    /// Grover iterates (default 5 for the data plane, routers for the control plane).
    #[arg(long)]
    pub iterates: Option<u64>,
    /// Edges (control plane).
    #[arg(long, default_value_t = 20)]
    pub edges: u64,
    /// Diameter (default routers − 1).
    #[arg(long)]
    pub diameter: Option<u64>,
    /// Count for the mid-circuit-reset variant.
    #[arg(long)]
    pub reset: bool,
    /// Emit a CSV sweep over this variable.
    #[arg(long, value_enum, requires_all = ["from", "to"])]
    pub sweep: Option<SweepVar>,
    #[arg(long)]
    pub from: Option<u64>,
    #[arg(long)]
    pub to: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepVar {
    /// log2 of the header count.
    Headers,
    Routers,
    Edges,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSummary {
    pub mode: Mode,
    pub n: usize,
    pub property: PropertyDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<InitSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_hint: Option<u64>,
}

impl ProblemSummary {
    fn of(problem: &Problem) -> Self {
        Self {
            mode: problem.mode(),
            n: problem.width(),
            property: problem.property_doc(),
            init: None,
            shots: None,
            k_hint: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub solutions: BTreeSet<Bits>,
    /// Every confirmed solution is in the brute-force set.
    pub sound: bool,
    /// The confirmed set equals the brute-force set.
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub problem: ProblemSummary,
    pub backend: Backend,
    /// Qubits simulated: inputs plus oracle ancillas.
    pub qubits: usize,
    pub seed: u64,
    pub grover_iterates: u64,
    pub histogram: BTreeMap<Bits, u64>,
    pub confirmed: BTreeSet<Bits>,
    pub exact_success: f64,
    pub success_fraction: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    /// Rounds run by `--all`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rounds: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<Comparison>,
    /// Wall-clock data; excluded when comparing reports.
    pub timing: Timing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForceReport {
    pub problem: ProblemSummary,
    pub confirmed: BTreeSet<Bits>,
    pub count: usize,
    pub timing: Timing,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_problem(args: &ProblemArgs) -> Result<Problem> {
    Problem::from_documents(args.mode.into(), &read(&args.network)?, &read(&args.property)?)
}

fn init_spec(args: &VerifyArgs) -> Result<InitSpec> {
    let init = match (args.init, args.p) {
        (InitArg::Uniform, None) => InitSpec::Uniform,
        (InitArg::Uniform, Some(_)) => {
            return Err(Error::InvalidArgument("--p only applies to --init biased".into()))
        }
        (InitArg::Biased, Some(p)) => InitSpec::Biased { p },
        (InitArg::Biased, None) => {
            return Err(Error::InvalidArgument("--init biased needs --p".into()))
        }
    };
    init.validate()?;
    Ok(init)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<RunReport> {
    let started = Instant::now();
    if args.shots == 0 {
        return Err(Error::InvalidArgument("--shots must be at least 1".into()));
    }
    let problem = Arc::new(load_problem(&args.problem)?);
    let init = init_spec(args)?;
    let backend = match args.backend {
        BackendArg::Diagonal => Backend::Diagonal,
        BackendArg::Gate => Backend::GateLevel,
    };
    let options = OracleOptions {
        midcircuit_reset: !args.no_reset,
    };
    let mut summary = ProblemSummary::of(&problem);
    summary.init = Some(init);
    summary.shots = Some(args.shots);
    summary.k_hint = args.k_hint;

    let mut report = if args.all {
        if init != InitSpec::Uniform {
            return Err(Error::InvalidArgument("--all runs from the uniform start".into()));
        }
        let n = problem.width();
        let budget = match args.rounds {
            Some(r) => r,
            None => u32::try_from(1u64 << n.min(31)).unwrap_or(u32::MAX),
        };
        let qubits = compile(problem.clone(), backend, options, &ExclusionSet::new())?.width();
        let found = find_all_with(problem.clone(), budget, args.shots, args.seed, backend, options)?;
        let first = found.history.first().expect("at least one round");
        let mut histogram = BTreeMap::new();
        for round in &found.history {
            for (x, c) in &round.histogram {
                *histogram.entry(*x).or_insert(0) += c;
            }
        }
        let hits: u64 = found.solutions.iter().filter_map(|x| histogram.get(x)).sum();
        let total = args.shots * found.history.len() as u64;
        RunReport {
            problem: summary,
            backend,
            qubits,
            seed: args.seed,
            grover_iterates: first.iterates,
            histogram,
            confirmed: found.solutions.clone(),
            exact_success: first.exact_success,
            success_fraction: hits as f64 / total as f64,
            warnings: first.warnings.clone(),
            rounds: Some(found.rounds),
            bruteforce: None,
            timing: Timing { elapsed_ms: 0.0 },
        }
    } else {
        let oracle = Arc::new(compile(problem.clone(), backend, options, &ExclusionSet::new())?);
        let mut plan = GroverPlan::new(oracle, init, args.shots, args.seed)?;
        if let Some(k) = args.k_hint {
            plan = plan.with_k_hint(k)?;
        }
        if let Some(g) = args.iterates {
            plan = plan.with_iterates(g);
        }
        let result = if args.bbht {
            bbht_search(&plan)?
        } else {
            search(&plan)?
        };
        RunReport {
            problem: summary,
            backend,
            qubits: plan.oracle.width(),
            seed: args.seed,
            grover_iterates: result.iterates,
            histogram: result.histogram,
            confirmed: result.confirmed,
            exact_success: result.exact_success,
            success_fraction: result.success_fraction,
            warnings: result.warnings,
            rounds: None,
            bruteforce: None,
            timing: Timing { elapsed_ms: 0.0 },
        }
    };
    if args.compare {
        let solutions: BTreeSet<Bits> = brute_force(&problem)?.into_iter().collect();
        report.bruteforce = Some(Comparison {
            sound: report.confirmed.is_subset(&solutions),
            complete: report.confirmed == solutions,
            solutions,
        });
    }
    report.timing.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

pub fn cmd_bruteforce(args: &ProblemArgs) -> Result<BruteForceReport> {
    let started = Instant::now();
    let problem = load_problem(args)?;
    let confirmed: BTreeSet<Bits> = brute_force(&problem)?.into_iter().collect();
    Ok(BruteForceReport {
        problem: ProblemSummary::of(&problem),
        count: confirmed.len(),
        confirmed,
        timing: Timing {
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        },
    })
}

/// A single count, or a CSV table when `--sweep` is given.
pub fn cmd_estimate(args: &EstimateArgs) -> Result<String> {
    let unique = args.routers.saturating_mul(args.rules);
    if let Some(var) = args.sweep {
        let (from, to) = (args.from.unwrap_or(0), args.to.unwrap_or(0));
        let kind = match (args.plane, var) {
            (ModeArg::Dataplane, SweepVar::Headers) => Sweep::DataPlaneHeaders {
                routers: args.routers,
                rules_per_router: args.rules,
                iterates: args.iterates.unwrap_or(5),
            },
            (ModeArg::Dataplane, SweepVar::Routers) => Sweep::DataPlaneRouters {
                rules_per_router: args.rules,
                headers: args.headers,
                iterates: args.iterates.unwrap_or(5),
            },
            (ModeArg::Controlplane, SweepVar::Edges) => Sweep::ControlPlaneEdges {
                routers: args.routers,
            },
            (ModeArg::Controlplane, SweepVar::Routers) => Sweep::ControlPlaneRouters { edges: args.edges },
            (plane, var) => {
                return Err(Error::InvalidArgument(format!(
                    "cannot sweep {var:?} for the {plane:?} estimate"
                )))
            }
        };
        return Ok(to_csv(&sweep(kind, from, to, args.reset)?));
    }
    let count = match args.plane {
        ModeArg::Dataplane => {
            let p = DataPlaneParams {
                headers: args.headers,
                routers: args.routers,
                rules_per_router: args.rules,
                wildcards: args.wildcards.unwrap_or(unique),
                ports: args.ports.unwrap_or(unique),
                max_hops: args.hops.unwrap_or(args.routers),
                iterates: args.iterates.unwrap_or(5),
            };
            dataplane_qubits(&p, args.reset)?
        }
        ModeArg::Controlplane => {
            let p = ControlPlaneParams {
                routers: args.routers,
                edges: args.edges,
                diameter: args.diameter.unwrap_or(args.routers.saturating_sub(1)),
                iterates: args.iterates.unwrap_or(args.routers),
            };
            controlplane_qubits(&p, args.reset)?
        }
    };
    Ok(format!("{count}\n"))
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_resource_limit() {
        EXIT_RESOURCE
    } else {
        EXIT_INPUT
    }
}

fn emit(json: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, format!("{json}\n")).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

/// Horizontal bar chart of the most frequent outcomes.
pub fn render_histogram(histogram: &BTreeMap<Bits, u64>, confirmed: &BTreeSet<Bits>) -> String {
    const WIDTH: u64 = 50;
    const ROWS: usize = 32;
    let mut bins: Vec<(&Bits, &u64)> = histogram.iter().collect();
    bins.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
    let top = bins.first().map_or(1, |(_, &c)| c.max(1));
    let mut out = String::new();
    for (x, &c) in bins.iter().take(ROWS) {
        let bar = "#".repeat((c * WIDTH / top) as usize);
        let tag = if confirmed.contains(x) { '*' } else { ' ' };
        out.push_str(&format!("{x} {tag} {c:>7} {bar}\n"));
    }
    if bins.len() > ROWS {
        out.push_str(&format!("... {} more outcomes\n", bins.len() - ROWS));
    }
    out
}

fn run(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Verify(args) => {
            let report = cmd_verify(args)?;
            let stderr = std::io::stderr();
            if stderr.is_terminal() {
                let _ = stderr.lock().write_all(render_histogram(&report.histogram, &report.confirmed).as_bytes());
            }
            emit(&serde_json::to_string_pretty(&report)?, args.problem.out.as_deref())?;
            Ok(if report.confirmed.is_empty() {
                EXIT_NONE_FOUND
            } else {
                EXIT_FOUND
            })
        }
        Command::Bruteforce(args) => {
            let report = cmd_bruteforce(args)?;
            emit(&serde_json::to_string_pretty(&report)?, args.out.as_deref())?;
            Ok(if report.confirmed.is_empty() {
                EXIT_NONE_FOUND
            } else {
                EXIT_FOUND
            })
        }
        Command::Estimate(args) => {
            print!("{}", cmd_estimate(args)?);
            Ok(EXIT_FOUND)
        }
    }
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qnwv: {e}");
            exit_code(&e)
        }
    }
}

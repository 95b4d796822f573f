//! Command-line front end: graph export, fault-set generation, verification
//! campaigns, witness construction, and counterexample replay.
//!
//! Exit codes: 0 all checks passed, 1 usage or I/O error, 2 counterexample
//! found (or a witness/replay did not behave as stored), 3 hypothesis unmet,
//! 4 infeasible request.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use aqmenger::campaign::{
    self, CampaignConfig, CampaignMode, CampaignReport, ExportFormat, Target,
    DEFAULT_ENUM_CEILING, ENUM_CEILING_ENV,
};
use aqmenger::error::Error;
use aqmenger::menger::FaultVariant;
use aqmenger::topology::AqParams;
use aqmenger::{disjoint_path_count, faults, make_graph, surviving_degree};

#[derive(Parser)]
#[command(
    name = "aqmenger",
    version,
    about = "Augmented k-ary n-cube construction and strong Menger connectivity verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate fault sets (random, or conditional with min degree >= 2)
    Generate(GenerateArgs),
    /// Run a verification campaign and write a JSON report
    Verify(VerifyArgs),
    /// Construct a sharpness witness and check it defeats strong Menger
    Witness(WitnessArgs),
    /// Re-verify every counterexample stored in a report
    Replay(ReplayArgs),
    /// Export the graph as an edge list or DOT
    Export(ExportArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: u8,
    #[arg(long)]
    k: u8,
    /// vertex or edge
    #[arg(long, default_value = "edge")]
    variant: String,
    /// fault-set size
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// how many sets to emit (seeds derive per index)
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// require minimum surviving degree >= 2 (edge variant only)
    #[arg(long)]
    conditional: bool,
    /// output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    n: u8,
    #[arg(long)]
    k: u8,
    /// structure | cn | expansion | lemma7 | lemma8 | lemma9 | thm1 |
    /// thm1-empirical | thm2 | thm3 | witness2 | witness3 | witness4
    #[arg(long)]
    target: Target,
    /// exhaustive or sampled (target-specific default when omitted)
    #[arg(long)]
    mode: Option<CampaignMode>,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// fault budget override (peer of the target bound; needs --probe above it)
    #[arg(long)]
    budget: Option<usize>,
    /// allow the budget to exceed the target's bound
    #[arg(long)]
    probe: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// witness anchor vertex
    #[arg(long)]
    anchor: Option<u32>,
    /// witness augmented dimension
    #[arg(long)]
    dim: Option<u8>,
    /// report path; the CSV summary lands next to it. stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct WitnessArgs {
    #[arg(long)]
    n: u8,
    #[arg(long)]
    k: u8,
    /// witness2 | witness3 | witness4
    #[arg(long)]
    target: Target,
    #[arg(long)]
    anchor: Option<u32>,
    #[arg(long)]
    dim: Option<u8>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReplayArgs {
    /// report JSON produced by `verify`
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long)]
    n: u8,
    #[arg(long)]
    k: u8,
    /// edgelist or dot
    #[arg(long, default_value = "edgelist")]
    format: ExportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => run_generate(args),
        Command::Verify(args) => run_verify(args),
        Command::Witness(args) => run_witness(args),
        Command::Replay(args) => run_replay(args),
        Command::Export(args) => run_export(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::HypothesisUnmet { .. } => ExitCode::from(3),
                Error::Infeasible { .. } => ExitCode::from(4),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(content.as_bytes())?;
        }
    }
    Ok(())
}

fn enum_ceiling() -> u64 {
    std::env::var(ENUM_CEILING_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_ENUM_CEILING)
}

fn run_generate(args: GenerateArgs) -> Result<ExitCode, Error> {
    let g = make_graph(args.n, args.k)?;
    let variant = match args.variant.as_str() {
        "vertex" => FaultVariant::Vertex,
        "edge" => FaultVariant::Edge,
        other => {
            return Err(Error::Infeasible {
                reason: format!("unknown variant '{other}', expected vertex or edge"),
            })
        }
    };
    if args.conditional && variant != FaultVariant::Edge {
        return Err(Error::VariantMismatch {
            expected: "edge",
            got: variant.name(),
        });
    }
    let mut lines = String::new();
    for i in 0..args.count {
        let seed = faults::derive_seed(args.seed, i);
        let set = if args.conditional {
            faults::conditional_edge_fault_set(&g, args.m, seed)?
        } else {
            faults::random_fault_set(&g, args.m, variant, seed)?
        };
        lines.push_str(&serde_json::to_string(&set)?);
        lines.push('\n');
    }
    emit(&args.out, &lines)?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let mut config = CampaignConfig::new(args.n, args.k, args.target);
    if let Some(mode) = args.mode {
        config.mode = mode;
    }
    config.trials = args.trials;
    config.seed = args.seed;
    config.budget = args.budget;
    config.probe = args.probe;
    config.jobs = args.jobs.max(1);
    config.ceiling = enum_ceiling();
    config.anchor = args.anchor;
    config.dim = args.dim;

    let report = campaign::run_campaign(&config)?;
    eprintln!(
        "{} n={} k={} budget={}: {} sets, {} failures ({} ms)",
        report.config.target,
        report.config.n,
        report.config.k,
        report.budget_used,
        report.totals.sets_tested,
        report.totals.failures,
        report.wall_time_ms
    );
    let json = report.to_json();
    match &args.out {
        Some(path) => {
            fs::write(path, &json)?;
            let csv = format!(
                "{}\n{}\n",
                CampaignReport::csv_header(),
                report.csv_row()
            );
            fs::write(csv_path(path), csv)?;
        }
        None => emit(&None, &json)?,
    }
    if report.totals.failures > 0 && report.config.target != Target::Thm1Empirical {
        Ok(ExitCode::from(2))
    } else {
        Ok(ExitCode::SUCCESS)
    }
}

fn csv_path(json_path: &Path) -> PathBuf {
    json_path.with_extension("csv")
}

fn run_witness(args: WitnessArgs) -> Result<ExitCode, Error> {
    if !args.target.is_witness() {
        return Err(Error::Infeasible {
            reason: format!("target {} is not a witness target", args.target),
        });
    }
    let params = AqParams::new(args.n, args.k)?;
    let g = aqmenger::AqGraph::new(params);
    let mut config = CampaignConfig::new(args.n, args.k, args.target);
    config.anchor = args.anchor;
    config.dim = args.dim;
    let case = campaign::build_witness(&g, &config)?;
    let (u, v) = case.pair;
    let achieved = disjoint_path_count(&g, &case.faults, case.mode, u, v)?;
    let required = surviving_degree(&g, &case.faults, u).min(surviving_degree(&g, &case.faults, v));
    let confirmed = achieved < required && achieved <= case.failure_bound;

    #[derive(serde::Serialize)]
    struct WitnessOutput<'a> {
        case: &'a faults::WitnessCase,
        achieved: usize,
        required: usize,
        confirmed: bool,
    }
    let output = serde_json::to_string_pretty(&WitnessOutput {
        case: &case,
        achieved,
        required,
        confirmed,
    })?;
    emit(&args.out, &output)?;
    eprintln!(
        "{} pair ({}, {}): {achieved} of {required} disjoint paths, expected <= {}",
        args.target, u.0, v.0, case.failure_bound
    );
    Ok(if confirmed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_replay(args: ReplayArgs) -> Result<ExitCode, Error> {
    let text = fs::read_to_string(&args.report)?;
    let report: CampaignReport = serde_json::from_str(&text)?;
    let summary = campaign::replay_report(&report)?;
    let json = serde_json::to_string_pretty(&summary)?;
    println!("{json}");
    eprintln!(
        "replayed {} counterexamples, {} reproduced, hash {}",
        summary.replayed,
        summary.reproduced,
        if summary.hash_ok { "ok" } else { "MISMATCH" }
    );
    Ok(if summary.all_reproduced() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run_export(args: ExportArgs) -> Result<ExitCode, Error> {
    let params = AqParams::new(args.n, args.k)?;
    let mut buffer = Vec::new();
    campaign::export_graph(params, args.format, &mut buffer)?;
    let content = String::from_utf8(buffer).expect("exports are utf-8");
    emit(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

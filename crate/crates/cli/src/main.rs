//! `weakmod`: generate balls and verify metric conditions on them.

mod config;
mod report;
mod suites;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use weakmod::graph::export::BallExport;
use weakmod::{Ball, BallOptions, BuildingModel, FiniteGraph, LatticeModel};

use config::{Check, Format, ModelArgs, ModelKind};
use report::{ReportBundle, RunConfigEcho};
use suites::{run_verify, RunError, Synthetic, VerifyModel, VerifyPlan};

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const THREADS_ENV: &str = "WEAKMOD_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "weakmod",
    version,
    about = "Ball generation and weak modularity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a ball and export it
    Ball(BallArgs),
    /// Run verification suites on a ball
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct BallArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Comma-separated checks
    #[arg(long, value_delimiter = ',', default_value = "triangle,quadrangle")]
    checks: Vec<Check>,
    /// json or text
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Stop each condition check at its first violation
    #[arg(long)]
    fail_fast: bool,
    /// Also run the condition checks centered at every neighbor of the center
    #[arg(long)]
    all_centers: bool,
}

enum Failure {
    Usage(String),
    Limit(String),
    Engine(String),
}

impl From<RunError> for Failure {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Usage(m) => Failure::Usage(m),
            RunError::Limit(e) => Failure::Limit(e.to_string()),
            RunError::Engine(e) => Failure::Engine(e.to_string()),
        }
    }
}

impl From<weakmod::Error> for Failure {
    fn from(e: weakmod::Error) -> Self {
        RunError::from(e).into()
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Engine(e.to_string()))
}

fn ball_options(args: &ModelArgs) -> BallOptions {
    BallOptions {
        max_vertices: args.max_vertices,
        ..BallOptions::default()
    }
}

fn emit(output: Option<&std::path::Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Engine(e.to_string()))
        }
    }
}

/// Calls `f` with the concrete model selected on the command line.
macro_rules! with_model {
    ($args:expr, |$m:ident| $body:expr) => {{
        let args: &ModelArgs = $args;
        match args.model {
            ModelKind::Lattice => {
                let $m = LatticeModel::new(args.n).map_err(|e| Failure::Usage(e.to_string()))?;
                $body
            }
            ModelKind::Building => {
                let $m = BuildingModel::new(args.p).map_err(|e| Failure::Usage(e.to_string()))?;
                $body
            }
            kind => {
                let graph = match kind {
                    ModelKind::Cycle5 => FiniteGraph::cycle(5)?,
                    ModelKind::Cycle6 => FiniteGraph::cycle(6)?,
                    _ => FiniteGraph::hypercube(3)?,
                };
                let $m = Synthetic { graph };
                $body
            }
        }
    }};
}

fn ball_export<M: VerifyModel>(model: &M, args: &ModelArgs) -> Result<BallExport, Failure> {
    let base = match &args.center {
        Some(s) => model.parse_vertex(s).map_err(Failure::Usage)?,
        None => model.base_vertex(),
    };
    let ball = Ball::generate_with(model, base, args.radius, ball_options(args))?;
    Ok(BallExport::from_ball(&ball))
}

fn run_ball(args: &BallArgs) -> Result<u8, Failure> {
    let export = with_model!(&args.model, |m| ball_export(&m, &args.model)?);
    let text = match args.format {
        Format::Json => export.to_json() + "\n",
        Format::Dot => export.to_dot(),
        Format::Text => export.to_text(),
    };
    emit(args.model.output.as_deref(), &text)?;
    Ok(0)
}

fn run_verify_cmd(args: &VerifyArgs) -> Result<u8, Failure> {
    if args.format == Format::Dot {
        return Err(Failure::Usage(
            "verify supports --format json or text".into(),
        ));
    }
    let mut checks = args.checks.clone();
    checks.sort();
    checks.dedup();
    let plan = VerifyPlan {
        checks: checks.clone(),
        radius: args.model.radius,
        all_centers: args.all_centers,
        fail_fast: args.fail_fast,
        ball_options: ball_options(&args.model),
    };
    let center = args.model.center.as_deref();
    let suites = with_model!(&args.model, |m| run_verify(&m, center, &plan)?);
    let echo = RunConfigEcho {
        model: args.model.model,
        n: (args.model.model == ModelKind::Lattice).then_some(args.model.n),
        p: (args.model.model == ModelKind::Building).then_some(args.model.p),
        radius: args.model.radius,
        checks: checks.iter().map(|c| c.name().to_string()).collect(),
        all_centers: args.all_centers,
    };
    let bundle = ReportBundle::new(echo, suites);
    let text = match args.format {
        Format::Text => bundle.to_text(),
        _ => bundle.to_json(),
    };
    emit(args.model.output.as_deref(), &text)?;
    if args.model.output.is_some() || args.format == Format::Json {
        eprint!("{}", bundle.to_text());
    }
    Ok(if bundle.passed { 0 } else { EXIT_VIOLATION })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Ball(a) => run_ball(a),
        Command::Verify(a) => run_verify_cmd(a),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Limit(m)) => {
            eprintln!("resource limit: {m}");
            ExitCode::from(EXIT_LIMIT)
        }
        Err(Failure::Engine(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

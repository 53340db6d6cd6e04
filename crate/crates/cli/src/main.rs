//! `cffa` — decide conflict-free fair allocation instances from the shell.
//!
//! Exit codes: 0 the answer is yes (or the command succeeded), 1 the answer
//! is no (or a certificate failed its check), 2 bad input, 3 the chosen
//! algorithm's capacity or budget was exceeded.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use cffa_core::color_coding::{solve_exhaustive_colorings, AutoSbMwis};
use cffa_core::dispatch::{self, SolveOptions, SolverChoice};
use cffa_core::io::{
    certificate_to_json, instance_to_json, parse_3partition, parse_bench_spec,
    parse_independent_set, parse_instance, parse_numerical_3dm, parse_sbmwis, report_to_json,
    CertificateDoc,
};
use cffa_core::reductions::{
    from_sbmwis, gen_cluster, gen_complement_matching, gen_near_complete, gen_random, GenParams,
};
use cffa_core::{verify_allocation, Error};

#[derive(Parser)]
#[command(name = "cffa", version, about = "Exact solvers for conflict-free fair allocation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide an instance and print a solve report.
    Solve(SolveArgs),
    /// Check a certificate document against an instance.
    Verify(VerifyArgs),
    /// Generate an instance and print it.
    Gen(GenArgs),
    /// Encode a source problem as an allocation instance.
    Reduce(ReduceArgs),
    /// Run a benchmark specification and print its CSV table.
    Bench(BenchArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (JSON).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Solver: auto, brute, subsetdp, subsetconv, color, complete,
    /// cluster2u, nearcomplete_u, guess_tn, partition_t.
    #[arg(long, default_value = "auto")]
    alg: String,
    /// Write the report here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Also write the certificate document here.
    #[arg(long, value_name = "FILE")]
    cert: Option<PathBuf>,
    /// Seed for the color solver's coloring stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Fixed repetition count for the color solver (overrides the default
    /// failure-bound plan).
    #[arg(long)]
    reps: Option<u64>,
    /// Work ceiling: caps the color solver's planned repetitions and the
    /// guess_tn enumeration.
    #[arg(long)]
    budget: Option<u64>,
    /// Missing-edge ceiling accepted by partition_t.
    #[arg(long)]
    max_missing: Option<usize>,
    /// With --alg color: sweep every coloring instead of sampling, making
    /// the verdict exact (tiny instances only).
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file (JSON).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Certificate file (JSON).
    #[arg(long, value_name = "FILE")]
    cert: PathBuf,
    /// Write the verdict here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    kind: GenKind,
}

#[derive(Args)]
struct GenCommon {
    /// Number of agents.
    #[arg(long)]
    agents: usize,
    /// Number of jobs.
    #[arg(long)]
    jobs: usize,
    /// Utility threshold every agent must reach.
    #[arg(long)]
    eta: u64,
    /// Utilities are drawn uniformly from 1..=this.
    #[arg(long, default_value_t = 9)]
    max_utility: u64,
    /// Bundle size cap.
    #[arg(long)]
    cap: Option<usize>,
    /// Give every agent the same utility row.
    #[arg(long)]
    uniform: bool,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the instance here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenKind {
    /// Independent random conflicts.
    Random {
        #[command(flatten)]
        common: GenCommon,
        /// Probability of each conflict edge, in percent.
        #[arg(long, default_value_t = 50)]
        edge_percent: u8,
    },
    /// Disjoint cliques.
    Cluster {
        #[command(flatten)]
        common: GenCommon,
        /// Number of cliques.
        #[arg(long)]
        cliques: usize,
    },
    /// Complete graph minus a few random edges.
    NearComplete {
        #[command(flatten)]
        common: GenCommon,
        /// Number of missing edges.
        #[arg(long)]
        missing: usize,
    },
    /// Complete graph minus a perfect matching (every degree = jobs - 2).
    ComplementMatching {
        #[command(flatten)]
        common: GenCommon,
    },
}

#[derive(Args)]
struct ReduceArgs {
    #[command(subcommand)]
    source: ReduceSource,
}

#[derive(Args)]
struct ReduceIo {
    /// Source problem file (JSON).
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Write the instance here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ReduceSource {
    /// 3-Partition source: {"sizes": [..], "bound": B}.
    #[command(name = "three-partition")]
    ThreePartition(ReduceIo),
    /// Numerical 3-dimensional matching source:
    /// {"x": [..], "y": [..], "z": [..], "bound": B}.
    #[command(name = "numerical-3dm")]
    Numerical3dm(ReduceIo),
    /// Independent-set source: {"vertices": V, "edges": [[a,b],..], "k": K}.
    #[command(name = "independent-set")]
    IndependentSet(ReduceIo),
    /// Size-bounded weighted independent-set source:
    /// {"vertices": V, "edges": [..], "weights": [..], "size_cap": K, "target": R}.
    #[command(name = "sbmwis")]
    Sbmwis {
        #[command(flatten)]
        io: ReduceIo,
        /// Accept a target of 0 by raising the threshold to 1 (the encoded
        /// instance is then stricter than the trivially-satisfiable source;
        /// a warning goes to stderr).
        #[arg(long)]
        lenient: bool,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Specification file (JSON): {"rows": [{"gen": {..}, "solver": "..",
    /// "reps": N, ...}, ..]}.
    #[arg(long, value_name = "FILE")]
    spec: PathBuf,
    /// Write the table here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// A command's unsuccessful ending: the message for stderr plus the process
/// exit code (2 = bad input, 3 = capacity/budget).
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capacity(_) => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("cannot read {}: {e}", path.display()),
    })
}

/// Sends `text` to stdout, or to `out` when given — never both.
fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let mut owned;
    let text = if text.ends_with('\n') {
        text
    } else {
        owned = String::with_capacity(text.len() + 1);
        owned.push_str(text);
        owned.push('\n');
        &owned
    };
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure {
            code: 2,
            message: format!("cannot write {}: {e}", path.display()),
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run_solve(args: &SolveArgs) -> Result<u8, Failure> {
    let inst = parse_instance(&read(&args.input)?)?;
    let choice = SolverChoice::from_str(&args.alg)?;
    let report = if args.exhaustive {
        if choice != SolverChoice::Color {
            return Err(Error::Routing(
                "--exhaustive applies only to --alg color".into(),
            )
            .into());
        }
        solve_exhaustive_colorings(&inst, &AutoSbMwis)?
    } else {
        let opts = SolveOptions {
            seed: args.seed,
            repetitions: args.reps,
            budget: args.budget,
            max_missing: args.max_missing,
        };
        dispatch::solve(&inst, choice, &opts)?
    };
    if let Some(path) = &args.cert {
        emit(Some(path), &certificate_to_json(&report))?;
    }
    emit(args.out.as_deref(), &report_to_json(&report))?;
    Ok(u8::from(!report.verdict))
}

fn run_verify(args: &VerifyArgs) -> Result<u8, Failure> {
    let inst = parse_instance(&read(&args.input)?)?;
    let doc = CertificateDoc::parse(&read(&args.cert)?)?;
    // Substantive failures answer "no" (exit 1); a structurally broken
    // certificate is bad input (exit 2) like any other malformed document.
    let reason = if doc.feasible {
        let alloc = doc.allocation()?;
        if verify_allocation(&inst, &alloc)? {
            None
        } else {
            Some("assignment violates the instance constraints")
        }
    } else {
        Some("certificate declares the instance infeasible")
    };
    let rendered = match reason {
        None => r#"{"valid":true}"#.to_string(),
        Some(r) => format!(r#"{{"valid":false,"reason":"{r}"}}"#),
    };
    emit(args.out.as_deref(), &rendered)?;
    Ok(u8::from(reason.is_some()))
}

fn run_gen(args: &GenArgs) -> Result<u8, Failure> {
    let (common, inst) = match &args.kind {
        GenKind::Random {
            common,
            edge_percent,
        } => (common, gen_random(&params(common), *edge_percent, common.seed)?),
        GenKind::Cluster { common, cliques } => (
            common,
            gen_cluster(&params(common), *cliques, common.seed)?.0,
        ),
        GenKind::NearComplete { common, missing } => (
            common,
            gen_near_complete(&params(common), *missing, common.seed)?,
        ),
        GenKind::ComplementMatching { common } => (
            common,
            gen_complement_matching(&params(common), common.seed)?,
        ),
    };
    emit(common.out.as_deref(), &instance_to_json(&inst))?;
    Ok(0)
}

fn params(common: &GenCommon) -> GenParams {
    GenParams {
        agents: common.agents,
        jobs: common.jobs,
        eta: common.eta,
        max_utility: common.max_utility,
        cap: common.cap,
        uniform: common.uniform,
    }
}

fn run_reduce(args: &ReduceArgs) -> Result<u8, Failure> {
    let (io, inst) = match &args.source {
        ReduceSource::ThreePartition(io) => (io, parse_3partition(&read(&io.input)?)?.encode()),
        ReduceSource::Numerical3dm(io) => (io, parse_numerical_3dm(&read(&io.input)?)?.encode()),
        ReduceSource::IndependentSet(io) => (io, parse_independent_set(&read(&io.input)?)?.encode()),
        ReduceSource::Sbmwis { io, lenient } => {
            let src = parse_sbmwis(&read(&io.input)?)?;
            let (inst, clamped) = from_sbmwis(&src, *lenient)?;
            if clamped {
                eprintln!(
                    "warning: target 0 clamped to threshold 1; every set satisfies the \
                     source, so the encoded instance asks a stricter question"
                );
            }
            (io, inst)
        }
    };
    emit(io.out.as_deref(), &instance_to_json(&inst))?;
    Ok(0)
}

fn run_bench(args: &BenchArgs) -> Result<u8, Failure> {
    let spec = parse_bench_spec(&read(&args.spec)?)?;
    emit(args.out.as_deref(), &dispatch::run_bench(&spec))?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version are successes; usage mistakes are input
            // errors like any other.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match &cli.command {
        Command::Solve(a) => run_solve(a),
        Command::Verify(a) => run_verify(a),
        Command::Gen(a) => run_gen(a),
        Command::Reduce(a) => run_reduce(a),
        Command::Bench(a) => run_bench(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

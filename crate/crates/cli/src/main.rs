//! `qcycles`: 3x+1 dynamics on rationals with a fixed odd denominator.
//!
//! Exit status is 0 on success, 1 on errors or failed verification and 3
//! when some orbit hit the step cap without closing a cycle.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qcycles::census::{self, ATablePoint};
use qcycles::parity::{self, ParityVector};
use qcycles::{orbit, Rational2, DEFAULT_STEP_CAP};

use output::Sink;

pub const EXIT_UNDECIDED: u8 = 3;

#[derive(Parser)]
#[command(name = "qcycles", version, about = "3x+1 dynamics on rationals with fixed odd denominator")]
struct Cli {
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    JsonLines,
    Csv,
    Human,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1)]
    k_min: u64,
    #[arg(long)]
    k_max: u64,
    #[arg(long, default_value_t = 500)]
    depth: u64,
    #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
    step_cap: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate T from a fraction j/k until it cycles.
    Orbit {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
    },
    /// Periodic point and cycle determined by a 0-1 vector such as 1100.
    Cycle { vector: String },
    /// List 0-1 vectors of one length in lexicographic order.
    Enumerate {
        n: usize,
        #[arg(long)]
        primitive_only: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Depth-N search of a single denominator.
    Search {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value_t = 500)]
        depth: u64,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search every admissible denominator in a range.
    Census {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scaling, repetition and covariance over a range of denominators.
    Phenomena {
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count denominators with a single attractor at several depths.
    Atable {
        #[arg(long)]
        k_max: u64,
        /// Comma-separated, strictly increasing.
        #[arg(long, value_delimiter = ',', required = true)]
        depths: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit A = c1 + (total - c1) exp(-c2 N) to an A-table CSV.
    Fit {
        /// CSV with columns depth and A, as written by `atable --format csv`.
        input: PathBuf,
        #[arg(long, default_value_t = 2000)]
        total: u64,
    },
    /// Run the exhaustive and randomized consistency checks.
    Verify {
        /// Check the closed form on every vector up to this length.
        #[arg(long, default_value_t = 12)]
        closed_form_exhaustive: usize,
        /// Number of random vectors of length at most 64.
        #[arg(long, default_value_t = 1000)]
        closed_form_random: usize,
        /// Check census totals against Möbius sums up to this length.
        #[arg(long, default_value_t = 20)]
        census_max: usize,
        /// Check every cycle found for k up to this bound against its closed form.
        #[arg(long, default_value_t = 500)]
        agreement_k_max: u64,
        #[arg(long, default_value_t = 200)]
        depth: u64,
        #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
        step_cap: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli.command) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn status(undecided: bool) -> ExitCode {
    if undecided {
        eprintln!("warning: some orbits reached the step cap without closing a cycle");
        ExitCode::from(EXIT_UNDECIDED)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Orbit { x, step_cap } => {
            let x: Rational2 = x.parse()?;
            if step_cap == 0 {
                bail!("step cap must be at least 1");
            }
            let out = orbit(&x, step_cap);
            print!("{}", output::render_orbit(&out));
            Ok(status(!out.decided))
        }
        Command::Cycle { vector } => {
            let v: ParityVector = vector.parse()?;
            print!("{}", output::render_cycle(&v));
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { n, primitive_only, output } => {
            let mut sink = Sink::open(output.out.as_deref())?;
            output::write_vectors(&mut sink, parity::enumerate_vectors(n, primitive_only)?, output.format)?;
            sink.finish()?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { k, depth, step_cap, output } => {
            let report = census::search_denominator(k, depth, step_cap)?;
            eprintln!("{}", output::summary_line(&report));
            let mut sink = Sink::open(output.out.as_deref())?;
            output::write_reports(&mut sink, std::slice::from_ref(&report), output.format)?;
            sink.finish()?;
            Ok(status(!report.undecided_numerators.is_empty()))
        }
        Command::Census { sweep, output } => {
            let reports = census::sweep(sweep.k_min, sweep.k_max, sweep.depth, sweep.step_cap)?;
            for r in &reports {
                eprintln!("{}", output::summary_line(r));
            }
            let mut sink = Sink::open(output.out.as_deref())?;
            output::write_reports(&mut sink, &reports, output.format)?;
            sink.finish()?;
            Ok(status(reports.iter().any(|r| !r.undecided_numerators.is_empty())))
        }
        Command::Phenomena { sweep, output } => {
            let (totals, details) =
                census::phenomena_census(sweep.k_min, sweep.k_max, sweep.depth, sweep.step_cap)?;
            let mut sink = Sink::open(output.out.as_deref())?;
            output::write_phenomena(&mut sink, &details, output.format)?;
            sink.finish()?;
            eprintln!("{}", output::render_phenomena_totals(&totals));
            Ok(status(totals.undecided_denominators > 0))
        }
        Command::Atable { k_max, depths, step_cap, output } => {
            let table = census::a_table(k_max, &depths, step_cap)?;
            let mut sink = Sink::open(output.out.as_deref())?;
            output::write_atable(&mut sink, &table, output.format)?;
            sink.finish()?;
            Ok(status(table.iter().any(|p| p.undecided_denominators > 0)))
        }
        Command::Fit { input, total } => {
            let points = read_atable(&input)?;
            let fit = census::fit_exponential(&points, total)?;
            println!("c1 = {:.6}", fit.c1);
            println!("c2 = {:.6}", fit.c2);
            println!("sse = {:.6}", fit.sse);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            closed_form_exhaustive,
            closed_form_random,
            census_max,
            agreement_k_max,
            depth,
            step_cap,
        } => {
            let report = output::verify(closed_form_exhaustive, closed_form_random, census_max, agreement_k_max, depth, step_cap)?;
            print!("{}", report.text);
            if !report.all_passed {
                return Ok(ExitCode::FAILURE);
            }
            Ok(status(report.undecided))
        }
    }
}

fn read_atable(path: &std::path::Path) -> Result<Vec<ATablePoint>> {
    let mut reader = csv::Reader::from_path(path).with_context(|| format!("reading {}", path.display()))?;
    let headers = reader.headers()?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .with_context(|| format!("missing column {name:?}"))
    };
    let (depth_col, a_col) = (col("depth")?, col("A")?);
    let mut points = Vec::new();
    for row in reader.records() {
        let row = row?;
        points.push(ATablePoint {
            depth: row[depth_col].trim().parse().context("depth")?,
            a: row[a_col].trim().parse().context("A")?,
            denominators: 0,
            undecided_denominators: 0,
        });
    }
    Ok(points)
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pamea::harness::{self, RunSettings, SeedRange};
use pamea::pamea::Variant;

/// Seeded runs, record comparison, ablation sweeps and reference fronts.
#[derive(Parser)]
#[command(name = "pamea", version = env!("CARGO_PKG_VERSION"))]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one or more seeds and write a record, population and CSV per run.
    Run(RunArgs),
    /// Compare two sets of run records (medians, IQR, rank-sum verdict).
    Compare {
        /// Glob or directory for side A.
        a: String,
        /// Glob or directory for side B.
        b: String,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Print `f1,f2` samples of a problem's true front.
    Front {
        problem: String,
        #[arg(short, long, default_value_t = 10_000)]
        n: usize,
        /// Write to a file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run all four variants per problem and compare each with the full one.
    Ablate {
        /// Problem ids; defaults to the settings file's problem.
        problems: Vec<String>,
        #[command(flatten)]
        common: CommonArgs,
        /// Also write all comparisons as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    problem: Option<String>,
    /// Variant: full, exploitation_only, annealing_only or no_annealing.
    #[arg(long)]
    variant: Option<Variant>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct CommonArgs {
    /// `key = value` settings file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, conflicts_with = "seeds")]
    seed: Option<u64>,
    /// `a..b` (end excluded) or `a..=b`.
    #[arg(long)]
    seeds: Option<SeedRange>,
    /// Evaluation budget; default 100 * D.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    population: Option<usize>,
    #[arg(long)]
    cycles: Option<usize>,
    #[arg(long)]
    reference_points: Option<usize>,
    /// Concurrent runs.
    #[arg(long)]
    workers: Option<usize>,
    /// Evaluate offspring batches in parallel.
    #[arg(long)]
    parallel_eval: bool,
    #[arg(long, default_value = "runs")]
    out: PathBuf,
}

impl CommonArgs {
    fn settings(&self, problem: Option<String>, variant: Option<Variant>) -> pamea::Result<RunSettings> {
        let mut s = match &self.config {
            Some(path) => RunSettings::from_file(path)?,
            None => RunSettings::default(),
        };
        if problem.is_some() {
            s.problem = problem;
        }
        if let Some(v) = variant {
            s.variant = v;
        }
        if let Some(seed) = self.seed {
            s.seeds = SeedRange::single(seed);
        }
        if let Some(seeds) = &self.seeds {
            s.seeds = seeds.clone();
        }
        s.budget = self.budget.or(s.budget);
        s.population_size = self.population.unwrap_or(s.population_size);
        s.sampling_cycles = self.cycles.unwrap_or(s.sampling_cycles);
        s.reference_points = self.reference_points.unwrap_or(s.reference_points);
        s.workers = self.workers.unwrap_or(s.workers);
        s.parallel_evaluation |= self.parallel_eval;
        Ok(s)
    }
}

fn execute(cli: Cli) -> pamea::Result<()> {
    match cli.command {
        Command::Run(args) => {
            let settings = args.common.settings(args.problem, args.variant)?;
            for o in harness::run_sweep(&settings, &args.common.out)? {
                let r = &o.record;
                println!(
                    "seed {:>4}  igd {:.6}  hv {:.6}  FE {}  gens {}  {:.2}s  -> {}",
                    r.seed,
                    r.final_indicators.igd,
                    r.final_indicators.hv,
                    r.evaluations,
                    r.generations,
                    r.wall_clock_seconds,
                    o.files.record.display()
                );
            }
        }
        Command::Compare { a, b, csv } => {
            let cmp = harness::compare(&a, &b)?;
            print!("{}", cmp.table());
            if let Some(path) = csv {
                std::fs::write(&path, cmp.csv()).map_err(|e| pamea::Error::Io { path, source: e })?;
            }
        }
        Command::Front { problem, n, out } => {
            let csv = harness::front_csv(&problem, n)?;
            match out {
                Some(path) => std::fs::write(&path, csv).map_err(|e| pamea::Error::Io { path, source: e })?,
                None => print!("{csv}"),
            }
        }
        Command::Ablate { problems, common, csv } => {
            let base = common.settings(None, None)?;
            let ids = if problems.is_empty() {
                vec![base.problem_id()?.to_string()]
            } else {
                problems
            };
            let mut all = String::new();
            for id in ids {
                let settings = RunSettings {
                    problem: Some(id),
                    ..base.clone()
                };
                let report = harness::ablate(&settings, &common.out)?;
                print!("{}", report.table());
                let body = report.csv();
                if all.is_empty() {
                    all.push_str(&body);
                } else {
                    all.push_str(body.split_once('\n').map_or("", |x| x.1));
                }
            }
            if let Some(path) = csv {
                std::fs::write(&path, all).map_err(|e| pamea::Error::Io { path, source: e })?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pamea: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

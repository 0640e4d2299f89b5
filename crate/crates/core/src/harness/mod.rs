//! Seeded runs on disk, record comparison, ablation sweeps and front export.
//!
//! Each run writes three files named after problem, variant and seed:
//!
//! * `<stem>.record.json`: config, versions, trajectory, APV log, final
//!   population and wall-clock time;
//! * `<stem>.population.json`: the final population with its config, free of
//!   timing data so reruns match byte for byte;
//! * `<stem>.trajectory.csv`: `fe,igd,hv,mean_sparsity`, one row per
//!   generation after `#` lines carrying version and config.

mod compare;
mod record;
mod settings;

pub use compare::{compare, compare_records, expand_records, load_records, Comparison, IndicatorRow, ALPHA};
pub use record::{code_version, run_stem, Indicators, MemberRecord, RunFiles, RunRecord, SCHEMA_VERSION};
pub use settings::{RunSettings, SeedRange, SETTINGS_KEYS};

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pamea::{run, PameaConfig, Variant};
use crate::problem::Problem;
use crate::problems::SparseProblem;

/// One finished run and where its files went.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub record: RunRecord,
    pub files: RunFiles,
}

/// Runs every seed of `settings`, writing three files per run into `out_dir`.
///
/// All configs are validated before anything touches the disk. Runs execute
/// on `settings.workers` threads; results come back in seed order.
pub fn run_sweep(settings: &RunSettings, out_dir: &Path) -> Result<Vec<RunOutcome>> {
    let problem = SparseProblem::from_id(settings.problem_id()?)?;
    let dim = problem.dim();
    let configs: Vec<PameaConfig> = settings
        .seeds
        .seeds()
        .iter()
        .map(|&seed| {
            let cfg = settings.config_for(dim, seed);
            cfg.validate(dim).map(|_| cfg)
        })
        .collect::<Result<_>>()?;
    if settings.workers == 0 {
        return Err(Error::config("workers must be at least 1"));
    }
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;

    let problem_id = problem.to_string();
    let one = |cfg: &PameaConfig| -> Result<RunOutcome> {
        let start = Instant::now();
        let result = run(&problem, cfg)?;
        let record = RunRecord::new(&problem_id, dim, cfg, &result, start.elapsed().as_secs_f64());
        let files = record.write(out_dir)?;
        Ok(RunOutcome { record, files })
    };
    if settings.workers == 1 {
        return configs.iter().map(one).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.workers)
        .build()
        .map_err(|e| Error::config(format!("cannot start {} workers: {e}", settings.workers)))?;
    pool.install(|| configs.par_iter().map(one).collect())
}

/// Every variant against the full algorithm on one problem.
#[derive(Clone, Debug)]
pub struct AblationReport {
    pub problem_id: String,
    /// Full-algorithm runs, seed order.
    pub full: Vec<RunRecord>,
    /// `(variant, its runs, full against it)` for each reduced variant.
    pub variants: Vec<(Variant, Vec<RunRecord>, Comparison)>,
}

impl AblationReport {
    pub fn table(&self) -> String {
        let mut out = String::new();
        for (_, _, cmp) in &self.variants {
            out.push_str(&cmp.table());
            out.push('\n');
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::new();
        for (i, (_, _, cmp)) in self.variants.iter().enumerate() {
            let csv = cmp.csv();
            let body = if i == 0 { &csv[..] } else { csv.split_once('\n').map_or("", |x| x.1) };
            out.push_str(body);
        }
        out
    }

    /// Per variant: is the full algorithm's median final IGD at most the variant's?
    pub fn full_at_least_as_good(&self) -> Vec<(Variant, bool)> {
        self.variants
            .iter()
            .map(|(v, _, cmp)| {
                let row = cmp.row("igd").expect("igd row");
                (*v, row.median_a <= row.median_b)
            })
            .collect()
    }
}

/// Runs all four variants over `settings.seeds` and compares each reduced
/// variant with the full algorithm. `settings.variant` is ignored.
pub fn ablate(settings: &RunSettings, out_dir: &Path) -> Result<AblationReport> {
    let mut runs = Vec::new();
    for variant in Variant::ALL {
        let s = RunSettings {
            variant,
            ..settings.clone()
        };
        let records: Vec<RunRecord> = run_sweep(&s, out_dir)?.into_iter().map(|o| o.record).collect();
        runs.push((variant, records));
    }
    let (_, full) = runs.remove(0);
    let variants = runs
        .into_iter()
        .map(|(v, recs)| {
            let cmp = compare_records(&full, &recs)?;
            Ok((v, recs, cmp))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(AblationReport {
        problem_id: full[0].problem_id.clone(),
        full,
        variants,
    })
}

/// `f1,f2` header and `n` rows sampled evenly along the true front.
pub fn front_csv(problem_id: &str, n: usize) -> Result<String> {
    let problem = SparseProblem::from_id(problem_id)?;
    if n < 2 {
        return Err(Error::config("front needs at least 2 points"));
    }
    let mut out = String::from("f1,f2\n");
    for p in problem.sample_front(n)? {
        let _ = writeln!(out, "{},{}", p[0], p[1]);
    }
    Ok(out)
}

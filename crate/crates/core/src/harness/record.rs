use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::TrajectoryPoint;
use crate::model::{BinaryMask, Population, RealVector, Solution};
use crate::operators::OperatorParams;
use crate::pamea::{AnnealStep, PameaConfig, RunResult, Variant};

pub const SCHEMA_VERSION: u32 = 1;

/// Crate version plus the git commit it was built from.
pub fn code_version() -> String {
    format!("{}+{}", env!("CARGO_PKG_VERSION"), env!("PAMEA_GIT_HASH"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberRecord {
    /// Mask as a `0`/`1` string, variable 0 first.
    pub mask: String,
    pub reals: Vec<f64>,
    pub objectives: Vec<f64>,
}

impl MemberRecord {
    pub fn from_solution(s: &Solution) -> Self {
        Self {
            mask: s.mask.to_bit_string(),
            reals: s.reals.values().to_vec(),
            objectives: s.objectives().to_vec(),
        }
    }

    pub fn to_solution(&self) -> Result<Solution> {
        let bits = self
            .mask
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::config(format!("mask character `{c}` is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let mut s = Solution::new(BinaryMask::from_bits(bits), RealVector::new(self.reals.clone()))?;
        s.objectives = Some(self.objectives.clone());
        Ok(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Indicators {
    pub igd: f64,
    pub hv: f64,
    pub mean_sparsity: f64,
}

impl From<&TrajectoryPoint> for Indicators {
    fn from(p: &TrajectoryPoint) -> Self {
        Self {
            igd: p.igd,
            hv: p.hv,
            mean_sparsity: p.mean_sparsity,
        }
    }
}

/// Self-describing result of one seeded run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub code_version: String,
    pub problem_id: String,
    pub seed: u64,
    pub variant: Variant,
    pub config: PameaConfig,
    /// Operator settings actually used.
    pub operators: OperatorParams,
    pub setup_evaluations: u64,
    pub evaluations: u64,
    pub generations: u64,
    pub initial: Indicators,
    #[serde(rename = "final")]
    pub final_indicators: Indicators,
    pub wall_clock_seconds: f64,
    pub trajectory: Vec<TrajectoryPoint>,
    pub anneal_log: Vec<AnnealStep>,
    pub population: Vec<MemberRecord>,
}

impl RunRecord {
    pub fn new(
        problem_id: &str,
        dim: usize,
        config: &PameaConfig,
        result: &RunResult,
        wall_clock_seconds: f64,
    ) -> Self {
        let points = result.trajectory.points();
        Self {
            schema_version: SCHEMA_VERSION,
            code_version: code_version(),
            problem_id: problem_id.to_string(),
            seed: config.seed,
            variant: config.variant,
            config: config.clone(),
            operators: config.operator_params(dim),
            setup_evaluations: config.setup_cost(dim),
            evaluations: result.evaluations,
            generations: result.generations,
            initial: Indicators::from(&points[0]),
            final_indicators: Indicators::from(&points[points.len() - 1]),
            wall_clock_seconds,
            trajectory: points.to_vec(),
            anneal_log: result.anneal_log.clone(),
            population: result.population.iter().map(MemberRecord::from_solution).collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let record: Self = serde_json::from_str(&text).map_err(|e| Error::Record {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        if record.schema_version != SCHEMA_VERSION {
            return Err(Error::Record {
                path: path.to_path_buf(),
                message: format!("schema version {} (expected {SCHEMA_VERSION})", record.schema_version),
            });
        }
        Ok(record)
    }

    pub fn final_population(&self) -> Result<Population> {
        self.population.iter().map(MemberRecord::to_solution).collect()
    }

    /// File stem shared by the three files of this run.
    pub fn stem(&self) -> String {
        run_stem(&self.problem_id, self.variant, self.seed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records serialize")
    }

    /// Final population with config and version, without timing data.
    pub fn population_json(&self) -> String {
        #[derive(Serialize)]
        struct PopulationFile<'a> {
            schema_version: u32,
            code_version: &'a str,
            problem_id: &'a str,
            seed: u64,
            variant: Variant,
            config: &'a PameaConfig,
            evaluations: u64,
            generations: u64,
            members: &'a [MemberRecord],
        }
        serde_json::to_string_pretty(&PopulationFile {
            schema_version: self.schema_version,
            code_version: &self.code_version,
            problem_id: &self.problem_id,
            seed: self.seed,
            variant: self.variant,
            config: &self.config,
            evaluations: self.evaluations,
            generations: self.generations,
            members: &self.population,
        })
        .expect("populations serialize")
    }

    /// `fe,igd,hv,mean_sparsity` rows after `#` lines carrying version and config.
    pub fn trajectory_csv(&self) -> String {
        let mut out = String::new();
        let config = serde_json::to_string(&self.config).expect("configs serialize");
        let _ = writeln!(out, "# pamea {} schema_version={}", self.code_version, self.schema_version);
        let _ = writeln!(out, "# problem={} seed={} variant={}", self.problem_id, self.seed, self.variant);
        let _ = writeln!(out, "# config={config}");
        out.push_str("fe,igd,hv,mean_sparsity\n");
        for p in &self.trajectory {
            let _ = writeln!(out, "{},{},{},{}", p.fe, p.igd, p.hv, p.mean_sparsity);
        }
        out
    }

    /// Writes `<stem>.record.json`, `<stem>.population.json` and
    /// `<stem>.trajectory.csv` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<RunFiles> {
        let files = RunFiles::new(dir, &self.stem());
        write_file(&files.record, &self.to_json())?;
        write_file(&files.population, &self.population_json())?;
        write_file(&files.trajectory, &self.trajectory_csv())?;
        Ok(files)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunFiles {
    pub record: PathBuf,
    pub population: PathBuf,
    pub trajectory: PathBuf,
}

impl RunFiles {
    pub fn new(dir: &Path, stem: &str) -> Self {
        Self {
            record: dir.join(format!("{stem}.record.json")),
            population: dir.join(format!("{stem}.population.json")),
            trajectory: dir.join(format!("{stem}.trajectory.csv")),
        }
    }
}

/// `desk-smop:easy:D=200:theta=20`, `full`, 3 -> `desk-smop_easy_D=200_theta=20.full.s3`.
pub fn run_stem(problem_id: &str, variant: Variant, seed: u64) -> String {
    let slug: String = problem_id
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || "-=".contains(c) { c } else { '_' })
        .collect();
    format!("{slug}.{variant}.s{seed}")
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pamea::run;
    use crate::problems::{Landscape, SparseProblem};

    fn tiny_record(seed: u64) -> RunRecord {
        let problem = SparseProblem::new(Landscape::Separable, 20, 2).unwrap();
        let mut cfg = PameaConfig::for_dimension(20, seed);
        cfg.population_size = 10;
        cfg.max_evaluations = 200;
        cfg.reference_points = 50;
        let out = run(&problem, &cfg).unwrap();
        RunRecord::new(&problem.to_string(), 20, &cfg, &out, 0.25)
    }

    #[test]
    fn record_round_trips_through_json() {
        let rec = tiny_record(1);
        let dir = tempfile::tempdir().unwrap();
        let files = rec.write(dir.path()).unwrap();
        let back = RunRecord::load(&files.record).unwrap();
        assert_eq!(back, rec);
        let pop = back.final_population().unwrap();
        assert_eq!(pop.len(), 10);
        assert_eq!(pop[0].mask.to_bit_string(), rec.population[0].mask);
    }

    #[test]
    fn csv_layout() {
        let rec = tiny_record(2);
        let csv = rec.trajectory_csv();
        let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
        assert_eq!(lines.next(), Some("fe,igd,hv,mean_sparsity"));
        assert_eq!(lines.count(), rec.trajectory.len());
        assert!(csv.contains(&code_version()));
        assert!(csv.contains("\"population_size\":10"));
    }

    #[test]
    fn stems_are_filesystem_safe() {
        assert_eq!(
            run_stem("desk-smop:easy:D=200:theta=20", Variant::Full, 3),
            "desk-smop_easy_D=200_theta=20.full.s3"
        );
    }

    #[test]
    fn malformed_record_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.record.json");
        std::fs::write(&path, "{ not json").unwrap();
        assert!(matches!(RunRecord::load(&path), Err(Error::Record { .. })));
        assert!(matches!(
            RunRecord::load(&dir.path().join("missing.json")),
            Err(Error::Io { .. })
        ));
    }
}

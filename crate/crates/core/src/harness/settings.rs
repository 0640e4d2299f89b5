use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::OperatorParams;
use crate::pamea::{PameaConfig, Variant};

/// Seeds for a sweep: `7`, `0..10` (end excluded) or `1..=5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedRange(Vec<u64>);

impl SeedRange {
    pub fn single(seed: u64) -> Self {
        Self(vec![seed])
    }

    pub fn seeds(&self) -> &[u64] {
        &self.0
    }
}

impl FromStr for SeedRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let int = |v: &str| -> Result<u64> {
            v.trim()
                .parse()
                .map_err(|_| Error::config(format!("bad seed `{v}` in `{s}`")))
        };
        let seeds: Vec<u64> = if let Some((a, b)) = s.split_once("..=") {
            (int(a)?..=int(b)?).collect()
        } else if let Some((a, b)) = s.split_once("..") {
            (int(a)?..int(b)?).collect()
        } else {
            vec![int(s)?]
        };
        if seeds.is_empty() {
            return Err(Error::config(format!("seed range `{s}` is empty")));
        }
        Ok(Self(seeds))
    }
}

impl fmt::Display for SeedRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.as_slice() {
            [one] => write!(f, "{one}"),
            [first, .., last] if (last - first) as usize + 1 == self.0.len() => {
                write!(f, "{first}..={last}")
            }
            all => {
                let parts: Vec<String> = all.iter().map(u64::to_string).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

/// Everything a `run` or `ablate` invocation needs besides the output directory.
///
/// Built from defaults, then a key/value file, then command-line flags.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSettings {
    pub problem: Option<String>,
    pub seeds: SeedRange,
    /// `None` means `100 * D`.
    pub budget: Option<u64>,
    pub variant: Variant,
    pub population_size: usize,
    pub sampling_cycles: usize,
    pub reference_points: usize,
    pub crossover_probability: Option<f64>,
    pub mutation_probability: Option<f64>,
    pub distribution_index: Option<f64>,
    pub parallel_evaluation: bool,
    pub workers: usize,
}

impl Default for RunSettings {
    fn default() -> Self {
        let base = PameaConfig::for_dimension(1, 1);
        Self {
            problem: None,
            seeds: SeedRange::single(1),
            budget: None,
            variant: Variant::Full,
            population_size: base.population_size,
            sampling_cycles: base.sampling_cycles,
            reference_points: base.reference_points,
            crossover_probability: None,
            mutation_probability: None,
            distribution_index: None,
            parallel_evaluation: false,
            workers: 1,
        }
    }
}

/// Keys accepted in a settings file.
pub const SETTINGS_KEYS: [&str; 13] = [
    "problem",
    "seed",
    "seeds",
    "budget",
    "variant",
    "population_size",
    "sampling_cycles",
    "reference_points",
    "crossover_probability",
    "mutation_probability",
    "distribution_index",
    "parallel_evaluation",
    "workers",
];

impl RunSettings {
    /// Reads `key = value` lines; `#` starts a comment.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut settings = Self::default();
        settings.apply_pairs(&parse_pairs(&text)?)?;
        Ok(settings)
    }

    pub fn apply_pairs(&mut self, pairs: &BTreeMap<String, String>) -> Result<()> {
        for (key, value) in pairs {
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
            value
                .parse()
                .map_err(|_| Error::config(format!("`{key}`: cannot parse `{value}`")))
        }
        match key {
            "problem" => self.problem = Some(value.to_string()),
            "seed" | "seeds" => self.seeds = value.parse()?,
            "budget" => self.budget = Some(num(key, value)?),
            "variant" => self.variant = value.parse()?,
            "population_size" => self.population_size = num(key, value)?,
            "sampling_cycles" => self.sampling_cycles = num(key, value)?,
            "reference_points" => self.reference_points = num(key, value)?,
            "crossover_probability" => self.crossover_probability = Some(num(key, value)?),
            "mutation_probability" => self.mutation_probability = Some(num(key, value)?),
            "distribution_index" => self.distribution_index = Some(num(key, value)?),
            "parallel_evaluation" => self.parallel_evaluation = num(key, value)?,
            "workers" => self.workers = num(key, value)?,
            _ => return Err(Error::config(format!("unknown setting `{key}`"))),
        }
        Ok(())
    }

    pub fn problem_id(&self) -> Result<&str> {
        self.problem
            .as_deref()
            .ok_or_else(|| Error::config("no problem id given"))
    }

    /// Engine configuration for one seed on a `dim`-variable problem.
    pub fn config_for(&self, dim: usize, seed: u64) -> PameaConfig {
        let mut ops = OperatorParams::for_dimension(dim);
        let custom = self.crossover_probability.is_some()
            || self.mutation_probability.is_some()
            || self.distribution_index.is_some();
        if let Some(p) = self.crossover_probability {
            ops.crossover_probability = p;
        }
        if let Some(p) = self.mutation_probability {
            ops.mutation_probability = p;
        }
        if let Some(eta) = self.distribution_index {
            ops.distribution_index = eta;
        }
        let base = PameaConfig::for_dimension(dim, seed);
        PameaConfig {
            population_size: self.population_size,
            max_evaluations: self.budget.unwrap_or(base.max_evaluations),
            sampling_cycles: self.sampling_cycles,
            operators: custom.then_some(ops),
            seed,
            variant: self.variant,
            reference_points: self.reference_points,
            parallel_evaluation: self.parallel_evaluation,
        }
    }
}

fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut pairs = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(format!("settings line {}: expected `key = value`", lineno + 1))
        })?;
        let key = key.trim();
        if !SETTINGS_KEYS.contains(&key) {
            return Err(Error::config(format!("settings line {}: unknown key `{key}`", lineno + 1)));
        }
        pairs.insert(key.to_string(), value.trim().to_string());
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_ranges() {
        assert_eq!("3".parse::<SeedRange>().unwrap().seeds(), &[3]);
        assert_eq!("0..4".parse::<SeedRange>().unwrap().seeds(), &[0, 1, 2, 3]);
        assert_eq!("2..=4".parse::<SeedRange>().unwrap().seeds(), &[2, 3, 4]);
        assert!("5..5".parse::<SeedRange>().is_err());
        assert!("a..b".parse::<SeedRange>().is_err());
        assert_eq!("2..=4".parse::<SeedRange>().unwrap().to_string(), "2..=4");
    }

    #[test]
    fn file_values_and_overrides() {
        let text = "# sweep\nproblem = desk-smop:easy:D=100\nseeds = 0..3\nbudget=20000 # tail comment\nvariant = no_annealing\n";
        let mut s = RunSettings::default();
        s.apply_pairs(&parse_pairs(text).unwrap()).unwrap();
        assert_eq!(s.problem_id().unwrap(), "desk-smop:easy:D=100");
        assert_eq!(s.seeds.seeds(), &[0, 1, 2]);
        assert_eq!(s.variant, Variant::NoAnnealing);
        s.set("budget", "500").unwrap();
        assert_eq!(s.config_for(100, 0).max_evaluations, 500);
    }

    #[test]
    fn rejects_unknown_keys_and_junk() {
        assert!(matches!(parse_pairs("colour = red"), Err(Error::Config(_))));
        assert!(parse_pairs("just words").is_err());
        assert!(RunSettings::default().set("budget", "lots").is_err());
    }

    #[test]
    fn operator_overrides_are_partial() {
        let mut s = RunSettings::default();
        assert_eq!(s.config_for(50, 1).operators, None);
        s.set("distribution_index", "15").unwrap();
        let ops = s.config_for(50, 1).operators.unwrap();
        assert_eq!(ops.distribution_index, 15.0);
        assert_eq!(ops.mutation_probability, 1.0 / 50.0);
    }
}

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::OperatorParams;

/// Which offspring generators run each generation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// Exploitation search for one half, annealing search for the other.
    #[default]
    Full,
    /// Both halves bred by exploitation search.
    ExploitationOnly,
    /// Both halves bred by annealing search.
    AnnealingOnly,
    /// Full algorithm with the annealing rate pinned at 1.
    NoAnnealing,
}

impl Variant {
    pub const ALL: [Variant; 4] = [
        Variant::Full,
        Variant::ExploitationOnly,
        Variant::AnnealingOnly,
        Variant::NoAnnealing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::ExploitationOnly => "exploitation_only",
            Variant::AnnealingOnly => "annealing_only",
            Variant::NoAnnealing => "no_annealing",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::config(format!("unknown variant `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PameaConfig {
    pub population_size: usize,
    pub max_evaluations: u64,
    /// CPV sampling cycles.
    pub sampling_cycles: usize,
    /// `None` resolves to [`OperatorParams::for_dimension`] at run time.
    pub operators: Option<OperatorParams>,
    pub seed: u64,
    pub variant: Variant,
    /// Reference-front sample size for the IGD trajectory.
    pub reference_points: usize,
    /// Evaluate offspring batches on the rayon pool.
    pub parallel_evaluation: bool,
}

impl PameaConfig {
    /// Population 100, one sampling cycle, budget `100 * dim`.
    pub fn for_dimension(dim: usize, seed: u64) -> Self {
        Self {
            population_size: 100,
            max_evaluations: 100 * dim as u64,
            sampling_cycles: 1,
            operators: None,
            seed,
            variant: Variant::Full,
            reference_points: 10_000,
            parallel_evaluation: false,
        }
    }

    pub fn operator_params(&self, dim: usize) -> OperatorParams {
        self.operators
            .unwrap_or_else(|| OperatorParams::for_dimension(dim))
    }

    /// Evaluations consumed before the main loop: CPV probing plus initialization.
    pub fn setup_cost(&self, dim: usize) -> u64 {
        (self.sampling_cycles * dim + self.population_size) as u64
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        let n = self.population_size;
        if n < 4 || !n.is_multiple_of(2) {
            return Err(Error::config(format!(
                "population size must be even and at least 4 (got {n})"
            )));
        }
        if self.sampling_cycles == 0 {
            return Err(Error::config("sampling cycles must be at least 1"));
        }
        if dim == 0 {
            return Err(Error::config("problem has no decision variables"));
        }
        if self.max_evaluations <= self.setup_cost(dim) {
            return Err(Error::config(format!(
                "evaluation budget {} does not exceed the setup cost {} (S*D + N)",
                self.max_evaluations,
                self.setup_cost(dim)
            )));
        }
        if self.reference_points < 2 {
            return Err(Error::config("reference_points must be at least 2"));
        }
        self.operator_params(dim).validate()
    }
}

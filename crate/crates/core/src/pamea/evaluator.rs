use rayon::prelude::*;

use crate::error::Result;
use crate::model::Solution;
use crate::problem::Problem;

/// Fills objective caches and counts every fill as one evaluation.
pub struct Evaluator<'p, P: Problem + ?Sized> {
    problem: &'p P,
    evaluations: u64,
    parallel: bool,
}

impl<'p, P: Problem + ?Sized> Evaluator<'p, P> {
    pub fn new(problem: &'p P) -> Self {
        Self {
            problem,
            evaluations: 0,
            parallel: false,
        }
    }

    /// Evaluate batches on the rayon pool. Evaluation draws no randomness, so
    /// this never changes a run's decisions.
    pub fn parallel(mut self, enabled: bool) -> Self {
        self.parallel = enabled;
        self
    }

    pub fn problem(&self) -> &'p P {
        self.problem
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Evaluates every member whose cache is empty.
    pub fn evaluate(&mut self, solutions: &mut [Solution]) -> Result<()> {
        let problem = self.problem;
        let fill = |s: &mut Solution| -> Result<u64> {
            if s.objectives.is_some() {
                return Ok(0);
            }
            s.objectives = Some(problem.evaluate(&s.decode())?);
            Ok(1)
        };
        let filled: u64 = if self.parallel {
            solutions
                .par_iter_mut()
                .map(fill)
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum()
        } else {
            solutions.iter_mut().map(fill).sum::<Result<u64>>()?
        };
        self.evaluations += filled;
        Ok(())
    }
}

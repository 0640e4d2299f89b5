use rand::distributions::Open01;
use rand::Rng;

use super::argmax_prob;
use super::evaluator::Evaluator;
use crate::error::{Error, Result};
use crate::model::{BinaryMask, Population, ProbabilityVector, RealVector, Solution};
use crate::operators::latin_hypercube;
use crate::problem::Problem;
use crate::selection::nondominated_sort;

/// Convergence-driven probability vector.
///
/// Each cycle probes `D` solutions that activate a single variable at its
/// Latin-hypercube value, sorts them into fronts and accumulates every
/// variable's front number. The totals are min-max normalized and inverted,
/// so the best-ranked variable gets 1. If all totals tie, every component is
/// 0.5. Costs `cycles * D` evaluations.
pub fn cpv_calculate<P, R>(
    evaluator: &mut Evaluator<'_, P>,
    cycles: usize,
    rng: &mut R,
) -> Result<ProbabilityVector>
where
    P: Problem + ?Sized,
    R: Rng + ?Sized,
{
    if cycles == 0 {
        return Err(Error::config("cpv_calculate: need at least one sampling cycle"));
    }
    let problem = evaluator.problem();
    let dim = problem.dim();
    let design = latin_hypercube(cycles, dim, problem.bounds(), rng)?;

    let mut totals = vec![0.0f64; dim];
    for row in &design {
        let mut probes: Vec<Solution> = (0..dim)
            .map(|i| Solution::new(BinaryMask::unit(dim, i), RealVector::new(row.clone())))
            .collect::<Result<_>>()?;
        evaluator.evaluate(&mut probes)?;
        let objs: Vec<Vec<f64>> = probes.iter().map(|s| s.objectives().to_vec()).collect();
        let fronts = nondominated_sort(&objs)?;
        for (total, &k) in totals.iter_mut().zip(fronts.as_slice()) {
            *total += k as f64;
        }
    }

    let lo = totals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = totals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let probs = if hi > lo {
        totals.iter().map(|t| 1.0 - (t - lo) / (hi - lo)).collect()
    } else {
        vec![0.5; dim]
    };
    ProbabilityVector::new(probs)
}

/// CPV-biased initial population, evaluated.
///
/// Reals are uniform in the bounds. Each mask starts empty and receives
/// `ceil(u * D)` binary tournaments (`u` uniform in (0, 1)) between two
/// uniformly drawn variables, the larger-CPV one being switched on.
pub fn initialize<P, R>(
    evaluator: &mut Evaluator<'_, P>,
    size: usize,
    cpv: &ProbabilityVector,
    rng: &mut R,
) -> Result<Population>
where
    P: Problem + ?Sized,
    R: Rng + ?Sized,
{
    let problem = evaluator.problem();
    let dim = problem.dim();
    if cpv.len() != dim {
        return Err(Error::contract("initialize: cpv length differs from problem dimension"));
    }
    let bounds = problem.bounds();
    let mut members = Vec::with_capacity(size);
    for _ in 0..size {
        let reals: Vec<f64> = (0..dim)
            .map(|i| rng.gen_range(bounds.lower[i]..=bounds.upper[i]))
            .collect();
        let mut mask = BinaryMask::zeros(dim);
        let u: f64 = rng.sample(Open01);
        let draws = (u * dim as f64).ceil() as usize;
        for _ in 0..draws {
            let m = rng.gen_range(0..dim);
            let n = rng.gen_range(0..dim);
            mask.set(argmax_prob(cpv, m, n, rng), true);
        }
        members.push(Solution::new(mask, RealVector::new(reals))?);
    }
    let mut population = Population::new(members);
    evaluator.evaluate(&mut population)?;
    Ok(population)
}

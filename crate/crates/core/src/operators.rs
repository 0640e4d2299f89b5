//! Variation and mating-selection primitives on real vectors.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Bounds, Population, RealVector};

/// SBX / polynomial-mutation settings.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperatorParams {
    pub crossover_probability: f64,
    pub mutation_probability: f64,
    pub distribution_index: f64,
}

impl OperatorParams {
    /// Crossover probability 1, mutation probability `1/dim`, distribution index 20.
    pub fn for_dimension(dim: usize) -> Self {
        Self {
            crossover_probability: 1.0,
            mutation_probability: 1.0 / dim.max(1) as f64,
            distribution_index: 20.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = 0.0..=1.0;
        if !unit.contains(&self.crossover_probability) {
            return Err(Error::config("crossover_probability must lie in [0, 1]"));
        }
        if !unit.contains(&self.mutation_probability) {
            return Err(Error::config("mutation_probability must lie in [0, 1]"));
        }
        if !(self.distribution_index >= 0.0 && self.distribution_index.is_finite()) {
            return Err(Error::config("distribution_index must be a finite nonnegative number"));
        }
        Ok(())
    }
}

/// Latin hypercube design: `samples` rows, one column per variable.
///
/// Column `j` places exactly one point in each of `samples` equal-width strata
/// of `[lower_j, upper_j]`, in shuffled order.
pub fn latin_hypercube<R: Rng + ?Sized>(
    samples: usize,
    dim: usize,
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Vec<Vec<f64>>> {
    if samples == 0 || dim == 0 {
        return Err(Error::config("latin_hypercube: sample count and dimension must be positive"));
    }
    if bounds.dim() != dim {
        return Err(Error::contract("latin_hypercube: bounds dimension mismatch"));
    }
    if bounds
        .lower
        .iter()
        .chain(&bounds.upper)
        .any(|v| !v.is_finite())
    {
        return Err(Error::config("latin_hypercube: bounds must be finite"));
    }

    let mut design = vec![vec![0.0; dim]; samples];
    let mut strata: Vec<usize> = (0..samples).collect();
    let width = 1.0 / samples as f64;
    for j in 0..dim {
        strata.shuffle(rng);
        let (lo, hi) = (bounds.lower[j], bounds.upper[j]);
        for (row, &stratum) in design.iter_mut().zip(&strata) {
            let u = (stratum as f64 + rng.gen::<f64>()) * width;
            row[j] = lo + u * (hi - lo);
        }
    }
    Ok(design)
}

/// Simulated binary crossover; returns the first child of the pair.
///
/// Each variable is recombined with probability `crossover_probability`
/// using a spread factor of random sign, otherwise copied from `p`.
pub fn sbx<R: Rng + ?Sized>(
    p: &RealVector,
    q: &RealVector,
    params: &OperatorParams,
    bounds: &Bounds,
    rng: &mut R,
) -> RealVector {
    debug_assert_eq!(p.len(), q.len());
    let eta = params.distribution_index;
    let child = p
        .values()
        .iter()
        .zip(q.values())
        .enumerate()
        .map(|(i, (&a, &b))| {
            if rng.gen::<f64>() >= params.crossover_probability {
                return a;
            }
            let mu: f64 = rng.gen();
            let mut beta = if mu <= 0.5 {
                (2.0 * mu).powf(1.0 / (eta + 1.0))
            } else {
                (2.0 - 2.0 * mu).powf(-1.0 / (eta + 1.0))
            };
            if rng.gen::<bool>() {
                beta = -beta;
            }
            bounds.clamp(i, 0.5 * (a + b) + 0.5 * beta * (a - b))
        })
        .collect();
    RealVector::new(child)
}

/// Bounded polynomial mutation.
pub fn polynomial_mutation<R: Rng + ?Sized>(
    r: &RealVector,
    params: &OperatorParams,
    bounds: &Bounds,
    rng: &mut R,
) -> RealVector {
    let eta = params.distribution_index;
    let power = 1.0 / (eta + 1.0);
    let out = r
        .values()
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            if rng.gen::<f64>() >= params.mutation_probability {
                return x;
            }
            let (lo, hi) = (bounds.lower[i], bounds.upper[i]);
            let span = hi - lo;
            if span <= 0.0 {
                return x;
            }
            let mu: f64 = rng.gen();
            let delta = if mu < 0.5 {
                let d1 = (x - lo) / span;
                (2.0 * mu + (1.0 - 2.0 * mu) * (1.0 - d1).powf(eta + 1.0)).powf(power) - 1.0
            } else {
                let d2 = (hi - x) / span;
                1.0 - (2.0 * (1.0 - mu) + 2.0 * (mu - 0.5) * (1.0 - d2).powf(eta + 1.0)).powf(power)
            };
            (x + delta * span).clamp(lo, hi)
        })
        .collect();
    RealVector::new(out)
}

/// Indices chosen by `count` binary tournaments (lower fitness wins, ties by coin).
pub fn binary_tournament_indices<R: Rng + ?Sized>(
    fitness: &[f64],
    count: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if fitness.is_empty() {
        return Err(Error::contract("binary_tournament: empty population"));
    }
    let n = fitness.len();
    Ok((0..count)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if fitness[a] < fitness[b] {
                a
            } else if fitness[b] < fitness[a] {
                b
            } else if rng.gen::<bool>() {
                a
            } else {
                b
            }
        })
        .collect())
}

/// Mating selection: `count` members picked by binary tournament on `fitness`.
pub fn binary_tournament<R: Rng + ?Sized>(
    population: &Population,
    fitness: &[f64],
    count: usize,
    rng: &mut R,
) -> Result<Population> {
    if fitness.len() != population.len() {
        return Err(Error::contract("binary_tournament: fitness length != population size"));
    }
    let picks = binary_tournament_indices(fitness, count, rng)?;
    Ok(picks.into_iter().map(|i| population[i].clone()).collect())
}

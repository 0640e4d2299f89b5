//! The probabilistic-annealing engine.
//!
//! Two subpopulations share one population each generation. The first is
//! bred by [`exploitation_search`], guided by a fixed convergence-driven
//! probability vector (CPV) estimated once by single-variable probing. The
//! second is bred by [`annealing_search`] over variable groups built from an
//! annealed probability vector (APV) whose spread widens as the evaluation
//! budget is consumed. SPEA2 environmental selection merges the two.

mod anneal;
mod config;
mod cpv;
mod engine;
mod evaluator;
mod exploit;

pub use anneal::{
    annealing_offspring, annealing_search, apv_compute, variable_clustering, AnnealState,
    AnnealingMoves, VariableGrouping,
};
pub use config::{PameaConfig, Variant};
pub use cpv::{cpv_calculate, initialize};
pub use engine::{run, AnnealStep, RunResult};
pub use evaluator::Evaluator;
pub use exploit::{exploitation_offspring, exploitation_search};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::ProbabilityVector;

/// Two positions from `pool`: distinct when the pool allows, the single
/// element when it has one, nothing when empty.
pub(crate) fn pick_two<R: Rng + ?Sized>(pool: &[usize], rng: &mut R) -> Option<(usize, usize)> {
    match pool.len() {
        0 => None,
        1 => Some((pool[0], pool[0])),
        n => {
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n - 1);
            if b >= a {
                b += 1;
            }
            Some((pool[a], pool[b]))
        }
    }
}

/// Index with the larger probability; ties by coin.
pub(crate) fn argmax_prob<R: Rng + ?Sized>(
    probs: &ProbabilityVector,
    m: usize,
    n: usize,
    rng: &mut R,
) -> usize {
    let (pm, pn) = (probs.get(m), probs.get(n));
    if pm > pn {
        m
    } else if pn > pm {
        n
    } else {
        *[m, n].choose(rng).expect("non-empty")
    }
}

/// Index with the smaller probability; ties by coin.
pub(crate) fn argmin_prob<R: Rng + ?Sized>(
    probs: &ProbabilityVector,
    m: usize,
    n: usize,
    rng: &mut R,
) -> usize {
    let (pm, pn) = (probs.get(m), probs.get(n));
    if pm < pn {
        m
    } else if pn < pm {
        n
    } else {
        *[m, n].choose(rng).expect("non-empty")
    }
}

/// Shuffled disjoint parent pairs; the first of each pair is the template.
pub(crate) fn random_pairs<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..count).collect();
    order.shuffle(rng);
    order.chunks_exact(2).map(|c| (c[0], c[1])).collect()
}

use serde::{Deserialize, Serialize};

use super::anneal::{annealing_search, apv_compute, variable_clustering, AnnealState};
use super::config::{PameaConfig, Variant};
use super::cpv::{cpv_calculate, initialize};
use super::evaluator::Evaluator;
use super::exploit::exploitation_search;
use crate::error::{Error, Result};
use crate::metrics::{hv2d, igd, mean_sparsity, IndicatorTrajectory, TrajectoryPoint};
use crate::model::{Population, ProbabilityVector};
use crate::operators::binary_tournament;
use crate::problem::Problem;
use crate::rng::{labels, RngStream};
use crate::selection::{spea2_environmental_selection, spea2_fitness};

/// APV and grouping summary for one generation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealStep {
    /// Evaluations consumed when the APV was built.
    pub fe: u64,
    pub rate: f64,
    pub apv_min: f64,
    pub apv_max: f64,
    pub apv_spread: f64,
    /// Spread of the parent population's per-bit activation shares.
    pub bit_fraction_spread: f64,
    pub group_size: usize,
    pub num_groups: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub cpv: ProbabilityVector,
    pub initial_population: Population,
    pub population: Population,
    /// Generation 0 (after initialization) followed by one point per generation.
    pub trajectory: IndicatorTrajectory,
    pub anneal_log: Vec<AnnealStep>,
    pub evaluations: u64,
    pub generations: u64,
}

/// Runs the optimizer until the evaluation budget is spent.
///
/// The budget check happens between generations, so the last generation may
/// overshoot `max_evaluations` by up to `N - 1`.
pub fn run<P: Problem + ?Sized>(problem: &P, config: &PameaConfig) -> Result<RunResult> {
    let dim = problem.dim();
    config.validate(dim)?;
    let params = config.operator_params(dim);
    let bounds = problem.bounds();
    let n = config.population_size;

    let mut cpv_rng = RngStream::new(config.seed, labels::CPV);
    let mut init_rng = RngStream::new(config.seed, labels::INIT);
    let mut sel_rng = RngStream::new(config.seed, labels::SELECTION);
    let mut q1_rng = RngStream::new(config.seed, labels::SUBPOP1);
    let mut q2_rng = RngStream::new(config.seed, labels::SUBPOP2);

    let mut evaluator = Evaluator::new(problem).parallel(config.parallel_evaluation);
    let cpv = cpv_calculate(&mut evaluator, config.sampling_cycles, &mut cpv_rng)?;
    let mut population = initialize(&mut evaluator, n, &cpv, &mut init_rng)?;
    let initial_population = population.clone();

    let reference = problem.reference_front(config.reference_points);
    let snapshot = |pop: &Population, fe: u64| -> Result<TrajectoryPoint> {
        let objs = pop.objectives();
        let igd = match &reference {
            Some(front) => igd(front, &objs)?,
            None => f64::NAN,
        };
        let hv = if problem.num_objectives() == 2 {
            hv2d(&objs, [1.0, 1.0])?
        } else {
            f64::NAN
        };
        Ok(TrajectoryPoint {
            fe,
            igd,
            hv,
            mean_sparsity: mean_sparsity(pop)?,
        })
    };

    let mut fe = evaluator.evaluations();
    let mut trajectory = IndicatorTrajectory::default();
    trajectory.push(snapshot(&population, fe)?)?;
    let mut anneal_log = Vec::new();
    let mut generations = 0u64;

    while fe < config.max_evaluations {
        let rate = match config.variant {
            Variant::NoAnnealing => 1.0,
            _ => AnnealState::from_budget(fe, config.max_evaluations).rate(),
        };
        let apv = apv_compute(&population, rate)?;
        let grouping = variable_clustering(&population, &apv, dim)?;
        let shares = population.bit_fractions();
        let share_spread = shares.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - shares.iter().copied().fold(f64::INFINITY, f64::min);
        anneal_log.push(AnnealStep {
            fe,
            rate,
            apv_min: apv.min(),
            apv_max: apv.max(),
            apv_spread: apv.spread(),
            bit_fraction_spread: share_spread,
            group_size: grouping.group_size,
            num_groups: grouping.len(),
        });

        let fitness = spea2_fitness(&population.objectives())?;
        let parents1 = binary_tournament(&population, &fitness, n, &mut sel_rng)?;
        let q1 = match config.variant {
            Variant::AnnealingOnly => {
                annealing_search(&parents1, &grouping, &params, bounds, &mut q1_rng)?
            }
            _ => exploitation_search(&parents1, &cpv, &params, bounds, &mut q1_rng)?,
        };
        let parents2 = binary_tournament(&population, &fitness, n, &mut sel_rng)?;
        let q2 = match config.variant {
            Variant::ExploitationOnly => {
                exploitation_search(&parents2, &cpv, &params, bounds, &mut q2_rng)?
            }
            _ => annealing_search(&parents2, &grouping, &params, bounds, &mut q2_rng)?,
        };

        let mut offspring: Vec<_> = q1.into_members();
        offspring.extend(q2.into_members());
        let before = evaluator.evaluations();
        evaluator.evaluate(&mut offspring)?;
        if evaluator.evaluations() - before != n as u64 {
            return Err(Error::contract("offspring count differs from population size"));
        }

        let mut pool = population.into_members();
        pool.extend(offspring);
        population = spea2_environmental_selection(&Population::new(pool), n)?;
        fe += n as u64;
        generations += 1;
        trajectory.push(snapshot(&population, fe)?)?;
    }

    debug_assert_eq!(fe, evaluator.evaluations());
    Ok(RunResult {
        cpv,
        initial_population,
        population,
        trajectory,
        anneal_log,
        evaluations: evaluator.evaluations(),
        generations,
    })
}

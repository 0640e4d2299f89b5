//! Annealed probability vector, variable grouping and group-wise search.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::random_pairs;
use crate::error::{Error, Result};
use crate::model::{Bounds, Population, ProbabilityVector, Solution};
use crate::operators::{polynomial_mutation, sbx, OperatorParams};

/// Annealing coefficient: consumed share of the evaluation budget.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnealState {
    rate: f64,
}

impl AnnealState {
    pub fn new(rate: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&rate) {
            return Err(Error::contract(format!("annealing rate {rate} outside [0, 1]")));
        }
        Ok(Self { rate })
    }

    /// `evaluations / budget`, capped at 1.
    pub fn from_budget(evaluations: u64, budget: u64) -> Self {
        let rate = if budget == 0 {
            1.0
        } else {
            (evaluations as f64 / budget as f64).min(1.0)
        };
        Self { rate }
    }

    pub fn rate(self) -> f64 {
        self.rate
    }
}

/// `apv_i = (1 - rate) / 2 + rate * (share of members with bit i set)`.
///
/// The bit shares are mapped affinely onto `[(1 - rate)/2, (1 + rate)/2]`:
/// all components sit at 0.5 when `rate = 0` and equal the raw shares at
/// `rate = 1`. Results are clamped into the band so that, in floating point,
/// every component lies in it and the spread never exceeds `rate`.
pub fn apv_compute(population: &Population, rate: f64) -> Result<ProbabilityVector> {
    if population.is_empty() {
        return Err(Error::contract("apv_compute: empty population"));
    }
    let rate = AnnealState::new(rate)?.rate();
    let lo = (1.0 - rate) / 2.0;
    let mut hi = ((1.0 + rate) / 2.0).min(lo + rate);
    while hi - lo > rate {
        hi = hi.next_down();
    }
    let probs = population
        .bit_fractions()
        .into_iter()
        .map(|share| (lo + rate * share).clamp(lo, hi))
        .collect();
    ProbabilityVector::new(probs)
}

/// Contiguous blocks of the APV-descending variable order, each with the
/// mean APV of its members.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariableGrouping {
    pub groups: Vec<Vec<usize>>,
    pub probs: Vec<f64>,
    pub group_size: usize,
}

impl VariableGrouping {
    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }
}

/// Groups sized by the population's mean sparsity.
///
/// `group_size = clamp(round(mean_sparsity * D), 1, D)`; the APV-sorted
/// indices (descending, stable) are cut into `ceil(D / group_size)` blocks.
pub fn variable_clustering(
    population: &Population,
    apv: &ProbabilityVector,
    dim: usize,
) -> Result<VariableGrouping> {
    if apv.len() != dim || dim == 0 {
        return Err(Error::contract("variable_clustering: apv length differs from dimension"));
    }
    if population.is_empty() {
        return Err(Error::contract("variable_clustering: empty population"));
    }
    let mean_sparsity = population
        .iter()
        .map(|s| s.mask.support_size() as f64 / dim as f64)
        .sum::<f64>()
        / population.len() as f64;
    let group_size = ((mean_sparsity * dim as f64).round() as usize).clamp(1, dim);

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| apv.get(b).total_cmp(&apv.get(a)));

    let groups: Vec<Vec<usize>> = order.chunks(group_size).map(<[usize]>::to_vec).collect();
    let probs = groups
        .iter()
        .map(|g| g.iter().map(|&i| apv.get(i)).sum::<f64>() / g.len() as f64)
        .collect();
    Ok(VariableGrouping {
        groups,
        probs,
        group_size,
    })
}

/// Where an annealing-search child was allowed to change.
#[derive(Clone, Debug, PartialEq)]
pub struct AnnealingMoves {
    pub crossover_group: usize,
    /// `G ∩ index`: crossover write set.
    pub crossover_bits: Vec<usize>,
    pub mutation_group: usize,
    /// `S`: mutation write set, `floor(|H| / 2)` members of the mutation group.
    pub mutation_bits: Vec<usize>,
}

/// One offspring of the group-wise search, with `p` as mask template.
pub fn annealing_offspring<R: Rng + ?Sized>(
    p: &Solution,
    q: &Solution,
    grouping: &VariableGrouping,
    params: &OperatorParams,
    bounds: &Bounds,
    rng: &mut R,
) -> (Solution, AnnealingMoves) {
    let mut mask = p.mask.clone();
    let k = grouping.len();

    let g = rng.gen_range(0..k);
    let crossover_bits: Vec<usize> = grouping.groups[g]
        .iter()
        .copied()
        .filter(|&i| p.mask.get(i) != q.mask.get(i))
        .collect();
    let value = rng.gen::<f64>() < grouping.probs[g];
    for &i in &crossover_bits {
        mask.set(i, value);
    }

    let h = rng.gen_range(0..k);
    let members = &grouping.groups[h];
    let mutation_bits: Vec<usize> = sample(rng, members.len(), members.len() / 2)
        .into_iter()
        .map(|j| members[j])
        .collect();
    let value = rng.gen::<f64>() < grouping.probs[h];
    for &i in &mutation_bits {
        mask.set(i, value);
    }

    let child = sbx(&p.reals, &q.reals, params, bounds, rng);
    let reals = polynomial_mutation(&child, params, bounds, rng);
    (
        Solution {
            mask,
            reals,
            objectives: None,
        },
        AnnealingMoves {
            crossover_group: g,
            crossover_bits,
            mutation_group: h,
            mutation_bits,
        },
    )
}

/// `|parents| / 2` unevaluated offspring from disjoint random parent pairs.
pub fn annealing_search<R: Rng + ?Sized>(
    parents: &Population,
    grouping: &VariableGrouping,
    params: &OperatorParams,
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Population> {
    if !parents.len().is_multiple_of(2) {
        return Err(Error::contract("annealing_search: odd number of parents"));
    }
    if grouping.is_empty() {
        return Err(Error::contract("annealing_search: empty grouping"));
    }
    Ok(random_pairs(parents.len(), rng)
        .into_iter()
        .map(|(a, b)| annealing_offspring(&parents[a], &parents[b], grouping, params, bounds, rng).0)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{BinaryMask, RealVector};
    use crate::rng::RngStream;

    fn with_masks(masks: Vec<Vec<bool>>) -> Population {
        masks
            .into_iter()
            .map(|bits| {
                let d = bits.len();
                Solution::new(BinaryMask::from_bits(bits), RealVector::new(vec![0.5; d])).unwrap()
            })
            .collect()
    }

    fn random_population(rng: &mut RngStream, n: usize, d: usize) -> Population {
        let density: f64 = rng.gen();
        with_masks(
            (0..n)
                .map(|_| (0..d).map(|_| rng.gen_bool(density)).collect())
                .collect(),
        )
    }

    #[test]
    fn apv_endpoints_and_midpoint() {
        // bit 0 share 0.2, bit 1 share 1.0, bit 2 share 0.0
        let pop = with_masks(
            (0..5)
                .map(|i| vec![i == 0, true, false])
                .collect(),
        );
        assert_eq!(apv_compute(&pop, 0.0).unwrap().as_slice(), &[0.5, 0.5, 0.5]);
        assert_eq!(apv_compute(&pop, 1.0).unwrap().as_slice(), &[0.2, 1.0, 0.0]);
        let half = apv_compute(&pop, 0.5).unwrap();
        assert!((half.get(0) - 0.35).abs() < 1e-15);
        assert!(apv_compute(&pop, 1.5).is_err());
    }

    #[test]
    fn rate_from_budget() {
        assert_eq!(AnnealState::from_budget(250, 1000).rate(), 0.25);
        assert_eq!(AnnealState::from_budget(2000, 1000).rate(), 1.0);
    }

    #[test]
    fn clustering_arithmetic() {
        // D = 100, every member has exactly 10 active bits
        let d = 100;
        let pop = with_masks(
            (0..8)
                .map(|k| (0..d).map(|i| (i + k) % 10 == 0).collect())
                .collect(),
        );
        let apv = apv_compute(&pop, 0.7).unwrap();
        let grouping = variable_clustering(&pop, &apv, d).unwrap();
        assert_eq!(grouping.group_size, 10);
        assert_eq!(grouping.len(), 10);
    }

    #[test]
    fn group_probability_is_mean_apv() {
        let pop = with_masks(vec![vec![true, true]; 3]);
        let apv = ProbabilityVector::new(vec![0.4, 0.2]).unwrap();
        // mean sparsity 1 -> one group of two
        let grouping = variable_clustering(&pop, &apv, 2).unwrap();
        assert_eq!(grouping.groups, vec![vec![0, 1]]);
        assert!((grouping.probs[0] - 0.3).abs() < 1e-15);
    }

    #[test]
    fn empty_masks_give_singletons() {
        let d = 6;
        let pop = with_masks(vec![vec![false; d]; 4]);
        let apv = ProbabilityVector::new(vec![0.1, 0.6, 0.3, 0.9, 0.2, 0.4]).unwrap();
        let grouping = variable_clustering(&pop, &apv, d).unwrap();
        assert_eq!(grouping.group_size, 1);
        assert_eq!(grouping.len(), d);
        assert_eq!(grouping.groups.concat(), vec![3, 1, 5, 2, 4, 0]);
        assert_eq!(grouping.probs, vec![0.9, 0.6, 0.4, 0.3, 0.2, 0.1]);
    }

    #[test]
    fn changes_stay_inside_write_sets() {
        let mut rng = RngStream::new(1, "anneal");
        let d = 60;
        let bounds = Bounds::uniform(d, 0.0, 1.0);
        let params = OperatorParams::for_dimension(d);
        for _ in 0..500 {
            let pop = random_population(&mut rng, 6, d);
            let apv = apv_compute(&pop, rng.gen()).unwrap();
            let grouping = variable_clustering(&pop, &apv, d).unwrap();
            let (child, moves) =
                annealing_offspring(&pop[0], &pop[1], &grouping, &params, &bounds, &mut rng);
            let h = &grouping.groups[moves.mutation_group];
            assert_eq!(moves.mutation_bits.len(), h.len() / 2);
            assert!(moves.mutation_bits.iter().all(|i| h.contains(i)));
            for i in pop[0].mask.xor_positions(&child.mask) {
                assert!(moves.crossover_bits.contains(&i) || moves.mutation_bits.contains(&i));
            }
        }
    }

    #[test]
    fn identical_parents_and_singleton_groups_are_noops() {
        let d = 5;
        let pop = with_masks(vec![vec![true, false, true, false, false]; 2]);
        // singleton groups: crossover sees G ∩ index = ∅, mutation samples floor(1/2) = 0 bits
        let grouping = VariableGrouping {
            groups: (0..d).map(|i| vec![i]).collect(),
            probs: vec![0.5; d],
            group_size: 1,
        };
        let bounds = Bounds::uniform(d, 0.0, 1.0);
        let params = OperatorParams::for_dimension(d);
        let mut rng = RngStream::new(2, "anneal");
        for _ in 0..100 {
            let (child, moves) =
                annealing_offspring(&pop[0], &pop[1], &grouping, &params, &bounds, &mut rng);
            assert!(moves.crossover_bits.is_empty() && moves.mutation_bits.is_empty());
            assert_eq!(child.mask, pop[0].mask);
        }
    }

    #[test]
    fn search_halves_the_pool() {
        let mut rng = RngStream::new(3, "anneal");
        let pop = random_population(&mut rng, 10, 20);
        let apv = apv_compute(&pop, 0.3).unwrap();
        let grouping = variable_clustering(&pop, &apv, 20).unwrap();
        let bounds = Bounds::uniform(20, 0.0, 1.0);
        let params = OperatorParams::for_dimension(20);
        let kids = annealing_search(&pop, &grouping, &params, &bounds, &mut rng).unwrap();
        assert_eq!(kids.len(), 5);
        assert!(kids.iter().all(|k| !k.is_evaluated()));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;
        use rand::Rng;

        proptest! {
            #[test]
            fn apv_stays_in_annealing_band(seed in any::<u64>(), rate in 0.0f64..=1.0) {
                let mut rng = RngStream::new(seed, "apv");
                let pop = random_population(&mut rng, 1 + (seed % 20) as usize, 15);
                let apv = apv_compute(&pop, rate).unwrap();
                let (lo, hi) = ((1.0 - rate) / 2.0, (1.0 + rate) / 2.0);
                for &p in apv.as_slice() {
                    prop_assert!(p >= lo && p <= hi);
                }
                prop_assert!(apv.spread() <= rate);
            }

            #[test]
            fn grouping_is_a_partition(seed in any::<u64>(), d in 1usize..80) {
                let mut rng = RngStream::new(seed, "partition");
                let pop = random_population(&mut rng, 7, d);
                let apv = apv_compute(&pop, rng.gen()).unwrap();
                let grouping = variable_clustering(&pop, &apv, d).unwrap();
                let mut all = grouping.groups.concat();
                all.sort_unstable();
                prop_assert_eq!(all, (0..d).collect::<Vec<_>>());
                prop_assert_eq!(grouping.len(), d.div_ceil(grouping.group_size));
            }
        }
    }
}

use rand::Rng;

use super::{argmax_prob, argmin_prob, pick_two, random_pairs};
use crate::error::{Error, Result};
use crate::model::{BinaryMask, Bounds, Population, ProbabilityVector, Solution};
use crate::operators::{polynomial_mutation, sbx, OperatorParams};

/// One offspring of the CPV-guided local search, with `p` as mask template.
///
/// Crossover writes at most one bit among the positions where the parents
/// differ; mutation writes at most one more. The child therefore stays within
/// Hamming distance 2 of `p`'s mask.
pub fn exploitation_offspring<R: Rng + ?Sized>(
    p: &Solution,
    q: &Solution,
    cpv: &ProbabilityVector,
    params: &OperatorParams,
    bounds: &Bounds,
    rng: &mut R,
) -> Solution {
    let mut mask = p.mask.clone();
    let differing = p.mask.xor_positions(&q.mask);
    let activate = rng.gen::<f64>() < 0.5;
    crossover_bits(&mut mask, &differing, activate, cpv, rng);
    let activate = rng.gen::<f64>() < 0.5;
    mutate_bits(&mut mask, activate, cpv, rng);

    let child = sbx(&p.reals, &q.reals, params, bounds, rng);
    let reals = polynomial_mutation(&child, params, bounds, rng);
    Solution {
        mask,
        reals,
        objectives: None,
    }
}

/// Draws two of the differing positions; switches the larger-CPV one on
/// (`activate`) or the smaller-CPV one off.
pub(crate) fn crossover_bits<R: Rng + ?Sized>(
    mask: &mut BinaryMask,
    differing: &[usize],
    activate: bool,
    cpv: &ProbabilityVector,
    rng: &mut R,
) {
    if let Some((m, n)) = pick_two(differing, rng) {
        if activate {
            mask.set(argmax_prob(cpv, m, n, rng), true);
        } else {
            mask.set(argmin_prob(cpv, m, n, rng), false);
        }
    }
}

/// Same rule over the child's own zero bits (`activate`) or nonzero bits.
pub(crate) fn mutate_bits<R: Rng + ?Sized>(
    mask: &mut BinaryMask,
    activate: bool,
    cpv: &ProbabilityVector,
    rng: &mut R,
) {
    if activate {
        if let Some((m, n)) = pick_two(&mask.zero_positions(), rng) {
            mask.set(argmax_prob(cpv, m, n, rng), true);
        }
    } else if let Some((m, n)) = pick_two(&mask.support(), rng) {
        mask.set(argmin_prob(cpv, m, n, rng), false);
    }
}

/// `|parents| / 2` unevaluated offspring from disjoint random parent pairs.
pub fn exploitation_search<R: Rng + ?Sized>(
    parents: &Population,
    cpv: &ProbabilityVector,
    params: &OperatorParams,
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Population> {
    if !parents.len().is_multiple_of(2) {
        return Err(Error::contract("exploitation_search: odd number of parents"));
    }
    Ok(random_pairs(parents.len(), rng)
        .into_iter()
        .map(|(a, b)| exploitation_offspring(&parents[a], &parents[b], cpv, params, bounds, rng))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::RealVector;
    use crate::rng::RngStream;

    fn solution(bits: Vec<bool>) -> Solution {
        let d = bits.len();
        Solution::new(BinaryMask::from_bits(bits), RealVector::new(vec![0.5; d])).unwrap()
    }

    fn random_solution(rng: &mut RngStream, d: usize, density: f64) -> Solution {
        solution((0..d).map(|_| rng.gen_bool(density)).collect())
    }

    #[test]
    fn identical_parents_move_at_most_one_bit() {
        let mut rng = RngStream::new(1, "exploit");
        let bounds = Bounds::uniform(30, 0.0, 1.0);
        let params = OperatorParams::for_dimension(30);
        let cpv = ProbabilityVector::new((0..30).map(|i| i as f64 / 29.0).collect()).unwrap();
        for _ in 0..500 {
            let p = random_solution(&mut rng, 30, 0.3);
            let child = exploitation_offspring(&p, &p, &cpv, &params, &bounds, &mut rng);
            assert!(child.mask.hamming(&p.mask) <= 1);
            assert!(child.objectives.is_none());
        }
    }

    #[test]
    fn crossover_activates_larger_cpv_position() {
        // parents differ exactly at {0, 1}; cpv = (1, 0, ...)
        let mut probs = vec![0.0; 6];
        probs[0] = 1.0;
        let cpv = ProbabilityVector::new(probs).unwrap();
        let p = BinaryMask::from_bits(vec![false, true, false, true, false, false]);
        let q = BinaryMask::from_bits(vec![true, false, false, true, false, false]);
        let differing = p.xor_positions(&q);
        assert_eq!(differing, vec![0, 1]);
        let mut rng = RngStream::new(2, "exploit");
        for _ in 0..100 {
            let mut child = p.clone();
            crossover_bits(&mut child, &differing, true, &cpv, &mut rng);
            assert!(child.get(0) && child.get(1));
            let mut child = p.clone();
            crossover_bits(&mut child, &differing, false, &cpv, &mut rng);
            assert!(!child.get(0) && !child.get(1));
        }
    }

    #[test]
    fn single_differing_bit_is_written() {
        let cpv = ProbabilityVector::uniform(3, 0.5);
        let p = BinaryMask::from_bits(vec![false, false, true]);
        let mut rng = RngStream::new(6, "exploit");
        let mut child = p.clone();
        crossover_bits(&mut child, &[1], true, &cpv, &mut rng);
        assert!(child.get(1));
        let mut child = p.clone();
        crossover_bits(&mut child, &[], true, &cpv, &mut rng);
        assert_eq!(child, p);
    }

    #[test]
    fn mutation_prefers_cpv_order() {
        let cpv = ProbabilityVector::new(vec![0.9, 0.1, 0.5, 0.2]).unwrap();
        let mut rng = RngStream::new(7, "exploit");
        // zero bits {0, 1}: switching on must pick 0
        let mut m = BinaryMask::from_bits(vec![false, false, true, true]);
        mutate_bits(&mut m, true, &cpv, &mut rng);
        assert!(m.get(0) && !m.get(1));
        // nonzero bits {2, 3}: switching off must pick 3
        let mut m = BinaryMask::from_bits(vec![false, false, true, true]);
        mutate_bits(&mut m, false, &cpv, &mut rng);
        assert!(m.get(2) && !m.get(3));
    }

    #[test]
    fn hamming_bound_holds_for_random_parents() {
        let mut rng = RngStream::new(3, "exploit");
        let d = 100;
        let bounds = Bounds::uniform(d, 0.0, 1.0);
        let params = OperatorParams::for_dimension(d);
        let cpv = ProbabilityVector::new((0..d).map(|_| rng.gen()).collect()).unwrap();
        for _ in 0..2000 {
            let density = rng.gen();
            let p = random_solution(&mut rng, d, density);
            let q = random_solution(&mut rng, d, density);
            let child = exploitation_offspring(&p, &q, &cpv, &params, &bounds, &mut rng);
            assert!(child.mask.hamming(&p.mask) <= 2);
            assert!(bounds.contains(child.reals.values()));
        }
    }

    #[test]
    fn degenerate_masks() {
        let mut rng = RngStream::new(4, "exploit");
        let bounds = Bounds::uniform(4, 0.0, 1.0);
        let params = OperatorParams::for_dimension(4);
        let cpv = ProbabilityVector::uniform(4, 0.5);
        let empty = solution(vec![false; 4]);
        let full = solution(vec![true; 4]);
        for _ in 0..200 {
            let a = exploitation_offspring(&empty, &empty, &cpv, &params, &bounds, &mut rng);
            assert!(a.mask.support_size() <= 1);
            let b = exploitation_offspring(&full, &full, &cpv, &params, &bounds, &mut rng);
            assert!(b.mask.support_size() >= 3);
        }
    }

    #[test]
    fn search_halves_the_pool() {
        let mut rng = RngStream::new(5, "exploit");
        let bounds = Bounds::uniform(10, 0.0, 1.0);
        let params = OperatorParams::for_dimension(10);
        let cpv = ProbabilityVector::uniform(10, 0.5);
        let parents: Population = (0..8).map(|_| random_solution(&mut rng, 10, 0.5)).collect();
        assert_eq!(exploitation_search(&parents, &cpv, &params, &bounds, &mut rng).unwrap().len(), 4);
        let odd: Population = parents.iter().take(3).cloned().collect();
        assert!(exploitation_search(&odd, &cpv, &params, &bounds, &mut rng).is_err());
    }
}

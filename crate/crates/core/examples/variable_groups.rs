//! Building the APV and its variable groups by hand, then one annealing child.

use pamea::operators::OperatorParams;
use pamea::pamea::{annealing_offspring, apv_compute, variable_clustering};
use pamea::{BinaryMask, Bounds, Population, RealVector, RngStream, Solution};
use rand::Rng;

fn main() -> pamea::Result<()> {
    let dim = 24;
    let mut rng = RngStream::new(11, "groups");
    // members favour the first six variables
    let pop: Population = (0..10)
        .map(|_| {
            let bits = (0..dim).map(|i| rng.gen_bool(if i < 6 { 0.8 } else { 0.05 })).collect();
            let reals = (0..dim).map(|_| rng.gen()).collect();
            Solution::new(BinaryMask::from_bits(bits), RealVector::new(reals))
        })
        .collect::<pamea::Result<_>>()?;

    for rate in [0.0, 0.5, 1.0] {
        let apv = apv_compute(&pop, rate)?;
        let grouping = variable_clustering(&pop, &apv, dim)?;
        println!("rate {rate}: group size {}, {} groups", grouping.group_size, grouping.len());
        for (g, p) in grouping.groups.iter().zip(&grouping.probs) {
            println!("  p = {p:.3}  {g:?}");
        }
    }

    let apv = apv_compute(&pop, 0.8)?;
    let grouping = variable_clustering(&pop, &apv, dim)?;
    let bounds = Bounds::uniform(dim, 0.0, 1.0);
    let params = OperatorParams::for_dimension(dim);
    let (child, moves) = annealing_offspring(&pop[0], &pop[1], &grouping, &params, &bounds, &mut rng);
    println!("\nparent {}", pop[0].mask.to_bit_string());
    println!("other  {}", pop[1].mask.to_bit_string());
    println!("child  {}", child.mask.to_bit_string());
    println!("crossover wrote {:?}, mutation wrote {:?}", moves.crossover_bits, moves.mutation_bits);
    Ok(())
}

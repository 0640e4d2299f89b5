//! The APV band widening with the consumed budget, and the group sizes it drives.
//!
//! cargo run --release --example annealing_schedule

use pamea::pamea::{run, PameaConfig, Variant};
use pamea::problems::SparseProblem;
use pamea::Problem;

fn main() -> pamea::Result<()> {
    let problem = SparseProblem::from_id("desk-smop:multimodal:D=300")?;
    for variant in [Variant::Full, Variant::NoAnnealing] {
        let mut config = PameaConfig::for_dimension(problem.dim(), 3);
        config.variant = variant;
        let out = run(&problem, &config)?;
        println!("{variant}");
        println!("{:>7} {:>6} {:>7} {:>7} {:>7} {:>7} {:>6}", "FE", "rate", "apv lo", "apv hi", "spread", "bits", "G x K");
        let log = &out.anneal_log;
        for step in log.iter().step_by((log.len() / 8).max(1)) {
            println!(
                "{:>7} {:>6.3} {:>7.3} {:>7.3} {:>7.3} {:>7.3} {:>3}x{}",
                step.fe,
                step.rate,
                step.apv_min,
                step.apv_max,
                step.apv_spread,
                step.bit_fraction_spread,
                step.group_size,
                step.num_groups
            );
        }
        println!("final IGD {:.5}\n", out.trajectory.last().unwrap().igd);
    }
    Ok(())
}

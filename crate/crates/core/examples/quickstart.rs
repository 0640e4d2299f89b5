//! One run on the separable benchmark, printing the convergence curve.
//!
//! cargo run --release --example quickstart -- desk-smop:easy:D=500 7

use std::time::Instant;

use pamea::pamea::{run, PameaConfig};
use pamea::problems::SparseProblem;
use pamea::Problem;

fn main() -> pamea::Result<()> {
    let mut args = std::env::args().skip(1);
    let id = args.next().unwrap_or_else(|| "desk-smop:easy:D=200".into());
    let seed = args.next().map_or(1, |s| s.parse().expect("seed must be an integer"));

    let problem = SparseProblem::from_id(&id)?;
    let config = PameaConfig::for_dimension(problem.dim(), seed);
    let start = Instant::now();
    let out = run(&problem, &config)?;
    let secs = start.elapsed().as_secs_f64();

    let points = out.trajectory.points();
    let stride = (points.len() / 10).max(1);
    println!("{:>8} {:>10} {:>8} {:>9}", "FE", "IGD", "HV", "sparsity");
    for p in points.iter().step_by(stride).chain(points.last()) {
        println!("{:>8} {:>10.5} {:>8.4} {:>9.4}", p.fe, p.igd, p.hv, p.mean_sparsity);
    }

    let truth = problem.support();
    let best = out
        .population
        .iter()
        .filter(|s| truth.iter().all(|&i| s.mask.get(i)))
        .map(|s| s.mask.support_size() - truth.len())
        .min();
    match best {
        Some(extra) => println!("true support recovered with {extra} spurious bit(s)"),
        None => println!("no member covers the true support"),
    }
    println!(
        "{} generations, {} evaluations, {secs:.2}s",
        out.generations, out.evaluations
    );
    Ok(())
}

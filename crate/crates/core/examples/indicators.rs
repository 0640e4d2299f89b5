//! IGD and hypervolume on hand-made sets, with the Monte Carlo estimate beside the exact sweep.

use pamea::metrics::{hv2d, hv_monte_carlo, igd};
use pamea::problems::SparseProblem;
use pamea::RngStream;

fn main() -> pamea::Result<()> {
    let problem = SparseProblem::from_id("desk-smop:easy:D=100")?;
    let front = problem.sample_front(10_000)?;

    let sets: [(&str, Vec<Vec<f64>>); 3] = [
        ("true front, 11 points", problem.sample_front(11)?),
        ("shifted by 0.1", problem.sample_front(11)?.into_iter().map(|p| vec![p[0] + 0.1, p[1] + 0.1]).collect()),
        ("single knee point", vec![vec![0.5, 0.5]]),
    ];
    let mut rng = RngStream::new(5, "hv");
    println!("{:<24} {:>9} {:>9} {:>18}", "set", "IGD", "HV", "HV (Monte Carlo)");
    for (name, set) in sets {
        let mc = hv_monte_carlo(&set, &[1.0, 1.0], 200_000, &mut rng)?;
        println!(
            "{name:<24} {:>9.5} {:>9.5} {:>9.5} ± {:.5}",
            igd(&front, &set)?,
            hv2d(&set, [1.0, 1.0])?,
            mc.value,
            mc.std_error
        );
    }
    println!("dense front HV {:.5} (ideal 0.5)", hv2d(&front, [1.0, 1.0])?);
    Ok(())
}

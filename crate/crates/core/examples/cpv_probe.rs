//! Single-variable probing: how well the CPV separates the true support.
//!
//! cargo run --release --example cpv_probe -- 100 10

use pamea::pamea::{cpv_calculate, Evaluator};
use pamea::problems::{Landscape, SparseProblem};
use pamea::rng::{labels, RngStream};

fn main() -> pamea::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<usize>().expect("integer argument"));
    let dim = args.next().unwrap_or(100);
    let theta = args.next().unwrap_or(10);

    for landscape in [Landscape::Separable, Landscape::Multimodal, Landscape::Deceptive] {
        let problem = SparseProblem::new(landscape, dim, theta)?;
        let mut separated = 0;
        for seed in 0..30 {
            let mut evaluator = Evaluator::new(&problem);
            let cpv = cpv_calculate(&mut evaluator, 1, &mut RngStream::new(seed, labels::CPV))?;
            let on = (0..dim).filter(|&i| problem.in_support(i)).map(|i| cpv.get(i));
            let off = (0..dim).filter(|&i| !problem.in_support(i)).map(|i| cpv.get(i));
            let lowest_on = on.fold(f64::INFINITY, f64::min);
            let highest_off = off.fold(f64::NEG_INFINITY, f64::max);
            if lowest_on > highest_off {
                separated += 1;
            }
            if seed == 0 {
                let top: Vec<String> = (0..theta.min(12)).map(|i| format!("{:.2}", cpv.get(i))).collect();
                println!("{problem}: cpv over the support [{}]", top.join(" "));
            }
        }
        println!("  support strictly above off-support in {separated}/30 seeds\n");
    }
    Ok(())
}

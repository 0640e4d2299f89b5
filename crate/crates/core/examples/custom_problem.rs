//! Plugging a user-defined problem into the engine.
//!
//! Any `Problem` works; IGD is reported when `reference_front` is implemented.

use pamea::pamea::{run, PameaConfig};
use pamea::{Bounds, Problem};

/// Sparse sphere pair: only the first `k` variables matter.
struct SparseSpheres {
    bounds: Bounds,
    k: usize,
}

impl Problem for SparseSpheres {
    fn dim(&self) -> usize {
        self.bounds.dim()
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> pamea::Result<Vec<f64>> {
        let head = &x[..self.k];
        let off: f64 = x[self.k..].iter().map(|v| v * v).sum();
        let f1: f64 = head.iter().map(|v| v * v).sum::<f64>() + off;
        let f2: f64 = head.iter().map(|v| (v - 1.0) * (v - 1.0)).sum::<f64>() + off;
        Ok(vec![f1, f2])
    }
}

fn main() -> pamea::Result<()> {
    let problem = SparseSpheres {
        bounds: Bounds::uniform(150, 0.0, 1.0),
        k: 5,
    };
    let out = run(&problem, &PameaConfig::for_dimension(problem.dim(), 9))?;
    let mut front: Vec<&[f64]> = out.population.iter().map(|s| s.objectives()).collect();
    front.sort_by(|a, b| a[0].total_cmp(&b[0]));
    for f in front.iter().step_by(10) {
        println!("{:.4} {:.4}", f[0], f[1]);
    }
    let support: Vec<usize> = out.population.iter().map(|s| s.mask.support_size()).collect();
    println!("support sizes {:?}", &support[..10]);
    println!("HV wrt (1, 1): {:.4}", out.trajectory.last().unwrap().hv);
    Ok(())
}

//! Wilcoxon rank-sum verdicts between samples that differ by a growing shift.

use pamea::metrics::{mann_whitney, rank_sum_test};
use pamea::RngStream;
use rand::Rng;

fn main() -> pamea::Result<()> {
    let mut rng = RngStream::new(2, "rank-sum");
    let base: Vec<f64> = (0..30).map(|_| rng.gen::<f64>()).collect();
    for shift in [0.0, 0.05, 0.15, 0.3, -0.3] {
        let other: Vec<f64> = (0..30).map(|_| rng.gen::<f64>() + shift).collect();
        let mw = mann_whitney(&base, &other).expect("non-degenerate samples");
        let verdict = rank_sum_test(&base, &other, 0.05)?;
        println!(
            "shift {shift:+.2}: U = {:>5.1}  z = {:+.3}  p = {:.4}  base is {}",
            mw.u,
            mw.z,
            mw.p_value,
            verdict.symbol()
        );
    }
    match rank_sum_test(&base[..4], &base, 0.05) {
        Err(e) => println!("four samples: {e} (exit code {})", e.exit_code()),
        Ok(_) => unreachable!(),
    }
    Ok(())
}

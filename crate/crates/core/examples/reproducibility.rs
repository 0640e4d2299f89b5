//! Two sweeps with the same settings produce identical population files and CSVs.

use pamea::harness::{run_sweep, RunSettings};

fn main() -> pamea::Result<()> {
    let mut settings = RunSettings::default();
    settings.set("problem", "desk-smop:deceptive:D=80")?;
    settings.set("seeds", "0..3")?;
    settings.set("reference_points", "1000")?;
    settings.set("workers", "2")?;

    let root = std::env::temp_dir().join("pamea-repro-example");
    let first = run_sweep(&settings, &root.join("a"))?;
    let second = run_sweep(&settings, &root.join("b"))?;
    for (a, b) in first.iter().zip(&second) {
        let same = |x: &std::path::Path, y: &std::path::Path| {
            std::fs::read(x).ok() == std::fs::read(y).ok()
        };
        println!(
            "seed {}: population identical {}, trajectory identical {}, wall clock {:.2}s vs {:.2}s",
            a.record.seed,
            same(&a.files.population, &b.files.population),
            same(&a.files.trajectory, &b.files.trajectory),
            a.record.wall_clock_seconds,
            b.record.wall_clock_seconds
        );
    }

    let rec = &first[0].record;
    let replay = pamea::pamea::run(&pamea::problems::SparseProblem::from_id(&rec.problem_id)?, &rec.config)?;
    println!("replay from stored config matches: {}", replay.population == rec.final_population()?);
    Ok(())
}

//! The four variants on a small multimodal instance, compared with the full algorithm.
//!
//! cargo run --release --example ablation -- desk-smop:multimodal:D=200 0..6

use pamea::harness::{ablate, RunSettings};

fn main() -> pamea::Result<()> {
    let mut args = std::env::args().skip(1);
    let mut settings = RunSettings::default();
    settings.set("problem", &args.next().unwrap_or_else(|| "desk-smop:multimodal:D=200".into()))?;
    settings.set("seeds", &args.next().unwrap_or_else(|| "0..6".into()))?;
    settings.set("reference_points", "2000")?;

    let out = std::env::temp_dir().join("pamea-ablation-example");
    let report = ablate(&settings, &out)?;
    print!("{}", report.table());
    for (variant, ok) in report.full_at_least_as_good() {
        println!("full median IGD <= {variant}: {ok}");
    }
    println!("records in {}", out.display());
    Ok(())
}

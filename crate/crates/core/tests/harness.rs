use std::path::Path;
use std::process::{Command, Output};

use pamea::harness::{self, front_csv, run_sweep, RunRecord, RunSettings};
use pamea::metrics::{hv2d, Verdict};
use pamea::pamea::Variant;
use pamea::Error;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pamea"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn small_settings(problem: &str, seeds: &str) -> RunSettings {
    let mut s = RunSettings::default();
    s.set("problem", problem).unwrap();
    s.set("seeds", seeds).unwrap();
    s.set("population_size", "20").unwrap();
    s.set("budget", "800").unwrap();
    s.set("reference_points", "200").unwrap();
    s
}

fn files_in(dir: &Path) -> usize {
    std::fs::read_dir(dir).map_or(0, |d| d.count())
}

#[test]
fn run_writes_three_files_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_sweep(&small_settings("desk-smop:easy:D=30", "0..3"), dir.path()).unwrap();
    assert_eq!(out.len(), 3);
    assert_eq!(files_in(dir.path()), 9);
    for o in &out {
        let rec = &o.record;
        assert_eq!(rec.evaluations, rec.setup_evaluations + rec.generations * 20);
        assert_eq!(RunRecord::load(&o.files.record).unwrap(), *rec);
    }
}

#[test]
fn parallel_sweep_matches_serial() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let serial = small_settings("desk-smop:deceptive:D=30", "0..4");
    let mut parallel = serial.clone();
    parallel.workers = 3;
    let x = run_sweep(&serial, a.path()).unwrap();
    let y = run_sweep(&parallel, b.path()).unwrap();
    for (p, q) in x.iter().zip(&y) {
        assert_eq!(p.record.seed, q.record.seed);
        assert_eq!(
            std::fs::read(&p.files.population).unwrap(),
            std::fs::read(&q.files.population).unwrap()
        );
    }
}

#[test]
fn zero_budget_is_a_config_error_and_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out");
    let mut s = small_settings("desk-smop:easy:D=30", "0");
    s.budget = Some(0);
    assert!(matches!(run_sweep(&s, &target), Err(Error::Config(_))));
    assert!(!target.exists());

    let out = cli(&["run", "desk-smop:easy:D=30", "--budget", "0", "--out", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!target.exists());
    assert!(!out.stderr.is_empty());
}

#[test]
fn cli_exit_codes() {
    assert_eq!(cli(&["run", "not-a-problem"]).status.code(), Some(2));
    assert_eq!(cli(&["front", "desk-smop:easy:D=10", "--out", "/nonexistent/dir/front.csv"]).status.code(), Some(3));
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("x.record.json");
    std::fs::write(&one, "{}").unwrap();
    assert_eq!(cli(&["compare", one.to_str().unwrap(), one.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn identical_sides_compare_as_equivalent() {
    let dir = tempfile::tempdir().unwrap();
    run_sweep(&small_settings("desk-smop:easy:D=30", "0..5"), dir.path()).unwrap();
    let pattern = format!("{}/*.record.json", dir.path().display());
    let cmp = harness::compare(&pattern, &pattern).unwrap();
    assert!(cmp.rows.iter().all(|r| r.verdict == Verdict::Approx));
    assert_eq!(cmp.runs_a, 5);

    let csv_path = dir.path().join("cmp.csv");
    let out = cli(&["compare", &pattern, dir.path().to_str().unwrap(), "--csv", csv_path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("igd") && table.contains("≈"));
    let csv = std::fs::read_to_string(csv_path).unwrap();
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn compare_refuses_small_or_mixed_sets() {
    let dir = tempfile::tempdir().unwrap();
    run_sweep(&small_settings("desk-smop:easy:D=30", "0..5"), dir.path()).unwrap();
    run_sweep(&small_settings("desk-smop:deceptive:D=30", "0..5"), dir.path()).unwrap();
    let easy = format!("{}/desk-smop_easy*.record.json", dir.path().display());
    let deceptive = format!("{}/desk-smop_deceptive*.record.json", dir.path().display());
    assert!(matches!(harness::compare(&easy, &deceptive), Err(Error::Statistics(_))));
    let few = format!("{}/desk-smop_easy*s[0-3].record.json", dir.path().display());
    assert!(matches!(harness::compare(&few, &easy), Err(Error::Statistics(_))));
    assert_eq!(cli(&["compare", &few, &easy]).status.code(), Some(4));
}

#[test]
fn front_rows() {
    assert_eq!(front_csv("desk-smop:easy:D=10", 2).unwrap(), "f1,f2\n0,1\n1,0\n");
    let big = front_csv("desk-smop:multimodal:D=10", 10_000).unwrap();
    let rows: Vec<Vec<f64>> = big
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 10_000);
    assert!((hv2d(&rows, [1.0, 1.0]).unwrap() - 0.5).abs() < 1e-3);

    let out = cli(&["front", "desk-smop:easy:D=10", "-n", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "f1,f2\n0,1\n1,0\n");
}

#[test]
fn no_annealing_apv_tracks_bit_shares() {
    let dir = tempfile::tempdir().unwrap();
    let mut s = small_settings("desk-smop:multimodal:D=40", "3");
    s.variant = Variant::NoAnnealing;
    let out = run_sweep(&s, dir.path()).unwrap();
    let log = &out[0].record.anneal_log;
    assert!(!log.is_empty());
    for step in log {
        assert_eq!(step.rate, 1.0);
        assert!((step.apv_spread - step.bit_fraction_spread).abs() < 1e-12);
    }
}

#[test]
fn settings_file_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("sweep.cfg");
    std::fs::write(
        &cfg,
        "# small sweep\nproblem = desk-smop:easy:D=30\nseeds = 0..2\npopulation_size = 20\nbudget = 600\nreference_points = 100\n",
    )
    .unwrap();
    let out_dir = dir.path().join("runs");
    let out = cli(&[
        "run",
        "--config",
        cfg.to_str().unwrap(),
        "--budget",
        "700",
        "--out",
        out_dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let records = harness::load_records(out_dir.to_str().unwrap()).unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r.config.max_evaluations == 700 && r.config.population_size == 20));

    std::fs::write(&cfg, "problem = desk-smop:easy:D=30\nspeed = fast\n").unwrap();
    assert_eq!(cli(&["run", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn stored_config_replays_the_population() {
    let dir = tempfile::tempdir().unwrap();
    let out = run_sweep(&small_settings("desk-smop:deceptive:D=25:seed=4", "9"), dir.path()).unwrap();
    let rec = RunRecord::load(&out[0].files.record).unwrap();
    let problem = pamea::problems::SparseProblem::from_id(&rec.problem_id).unwrap();
    let replay = pamea::pamea::run(&problem, &rec.config).unwrap();
    assert_eq!(replay.population, rec.final_population().unwrap());
}

#[test]
fn ablation_covers_all_variants() {
    let dir = tempfile::tempdir().unwrap();
    let report = harness::ablate(&small_settings("desk-smop:multimodal:D=30", "0..5"), dir.path()).unwrap();
    assert_eq!(report.full.len(), 5);
    let names: Vec<Variant> = report.variants.iter().map(|v| v.0).collect();
    assert_eq!(names, vec![Variant::ExploitationOnly, Variant::AnnealingOnly, Variant::NoAnnealing]);
    assert_eq!(files_in(dir.path()), 4 * 5 * 3);
    assert_eq!(report.csv().lines().count(), 1 + 3 * 2);
}

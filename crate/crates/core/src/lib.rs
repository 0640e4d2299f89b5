//! Probabilistic-annealing evolutionary optimization for large-scale sparse
//! multi-objective problems.
//!
//! Solutions pair a binary mask with a real vector; the decoded decision
//! vector is their elementwise product. The engine in [`pamea`] breeds one
//! half of every generation with a CPV-guided local search and the other half
//! with group-wise annealing search, then merges both through SPEA2
//! environmental selection.
//!
//! ```no_run
//! use pamea::pamea::{run, PameaConfig};
//! use pamea::problems::SparseProblem;
//!
//! let problem = SparseProblem::from_id("desk-smop:easy:D=200").unwrap();
//! let out = run(&problem, &PameaConfig::for_dimension(200, 1)).unwrap();
//! println!("final IGD {:.4}", out.trajectory.last().unwrap().igd);
//! ```
//!
//! The `examples/` directory has one runnable program per capability:
//! `quickstart`, `cpv_probe`, `annealing_schedule`, `variable_groups`,
//! `indicators`, `rank_sum`, `ablation`, `reproducibility` and
//! `custom_problem`.

pub mod dominance;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod model;
pub mod operators;
pub mod pamea;
pub mod problem;
pub mod problems;
pub mod rng;
pub mod selection;

pub use error::{Error, Result};
pub use model::{BinaryMask, Bounds, Population, ProbabilityVector, RealVector, Solution};
pub use problem::Problem;
pub use rng::RngStream;

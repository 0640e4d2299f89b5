//! DeskSMOP: a sparse bi-objective benchmark family with a known Pareto set.
//!
//! Variable 0 is the position variable. The objectives are
//! `f1 = x0 (1 + g)` and `f2 = (1 - x0)(1 + g)`, where `g` charges every
//! support variable for missing its target and every off-support variable
//! for being nonzero. The Pareto set is `x0` free, support variables on
//! target and everything else zero; the front is the segment `f1 + f2 = 1`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Bounds;
use crate::problem::Problem;
use crate::rng::RngStream;

/// Default target value of support variables on unseeded instances.
pub const DEFAULT_TARGET: f64 = 0.6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Landscape {
    /// Quadratic support terms, `|x|` off-support penalty. Id name `easy`.
    Separable,
    /// Quadratic plus cosine ripples on support terms.
    Multimodal,
    /// Off-support penalty that jumps at 0 then decreases toward the upper bound.
    Deceptive,
}

impl Landscape {
    pub fn id_name(self) -> &'static str {
        match self {
            Landscape::Separable => "easy",
            Landscape::Multimodal => "multimodal",
            Landscape::Deceptive => "deceptive",
        }
    }

    fn support_term(self, t: f64) -> f64 {
        match self {
            Landscape::Multimodal => t * t + 0.1 * (1.0 - (2.0 * PI * t).cos()),
            Landscape::Separable | Landscape::Deceptive => t * t,
        }
    }

    fn off_support_term(self, t: f64) -> f64 {
        match self {
            Landscape::Deceptive => {
                if t > 0.0 {
                    0.1 + 0.1 * (1.0 - t) * (1.0 - t)
                } else {
                    0.0
                }
            }
            Landscape::Separable | Landscape::Multimodal => t.abs(),
        }
    }
}

impl FromStr for Landscape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "easy" | "separable" => Ok(Landscape::Separable),
            "multimodal" => Ok(Landscape::Multimodal),
            "deceptive" => Ok(Landscape::Deceptive),
            other => Err(Error::config(format!("unknown DeskSMOP variant `{other}`"))),
        }
    }
}

/// Default sparsity `ceil(0.1 (D - M + 1))` for `M` objectives.
pub fn default_sparsity(dim: usize, num_objectives: usize) -> usize {
    let free = (dim + 1).saturating_sub(num_objectives);
    (free as f64 * 0.1).ceil() as usize
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseProblem {
    landscape: Landscape,
    dim: usize,
    bounds: Bounds,
    /// Sorted support indices; always contains 0.
    support: Vec<usize>,
    in_support: Vec<bool>,
    /// Target per variable; meaningful on support positions other than 0.
    targets: Vec<f64>,
    /// Instance seed, `None` for the default placement.
    seed: Option<u64>,
}

impl SparseProblem {
    /// Instance with support `{0, .., theta-1}` and every target at 0.6.
    pub fn new(landscape: Landscape, dim: usize, theta: usize) -> Result<Self> {
        Self::validate_shape(dim, theta)?;
        let support: Vec<usize> = (0..theta).collect();
        Ok(Self::assemble(landscape, dim, support, vec![DEFAULT_TARGET; dim], None))
    }

    /// Instance with `theta` at its default for `dim`.
    pub fn with_default_sparsity(landscape: Landscape, dim: usize) -> Result<Self> {
        Self::new(landscape, dim, default_sparsity(dim, 2).max(1))
    }

    /// Instance with randomly placed support (variable 0 always included) and
    /// targets drawn uniformly from `[0.2, 0.8]`.
    pub fn seeded(landscape: Landscape, dim: usize, theta: usize, seed: u64) -> Result<Self> {
        Self::validate_shape(dim, theta)?;
        let mut rng = RngStream::new(seed, "desk-smop/instance");
        let mut support = vec![0];
        support.extend(sample(&mut rng, dim - 1, theta - 1).into_iter().map(|i| i + 1));
        support.sort_unstable();
        let targets = (0..dim).map(|_| rng.gen_range(0.2..=0.8)).collect();
        Ok(Self::assemble(landscape, dim, support, targets, Some(seed)))
    }

    fn validate_shape(dim: usize, theta: usize) -> Result<()> {
        if dim < 2 {
            return Err(Error::config("DeskSMOP needs at least 2 variables"));
        }
        if theta == 0 || theta > dim {
            return Err(Error::config(format!("DeskSMOP sparsity {theta} outside 1..={dim}")));
        }
        Ok(())
    }

    fn assemble(
        landscape: Landscape,
        dim: usize,
        support: Vec<usize>,
        targets: Vec<f64>,
        seed: Option<u64>,
    ) -> Self {
        let mut in_support = vec![false; dim];
        for &i in &support {
            in_support[i] = true;
        }
        Self {
            landscape,
            dim,
            bounds: Bounds::uniform(dim, 0.0, 1.0),
            support,
            in_support,
            targets,
            seed,
        }
    }

    /// Parses ids such as `desk-smop:easy:D=500:seed=7` or
    /// `desk-smop:deceptive:D=1000:theta=50`.
    pub fn from_id(id: &str) -> Result<Self> {
        let mut parts = id.split(':');
        if parts.next() != Some("desk-smop") {
            return Err(Error::config(format!("unknown problem id `{id}`")));
        }
        let landscape: Landscape = parts
            .next()
            .ok_or_else(|| Error::config(format!("problem id `{id}` lacks a variant")))?
            .parse()?;
        let (mut dim, mut theta, mut seed) = (None, None, None);
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::config(format!("malformed problem id field `{part}`")))?;
            let number = || -> Result<u64> {
                value
                    .parse()
                    .map_err(|_| Error::config(format!("problem id field `{part}` is not an integer")))
            };
            match key {
                "D" | "d" => dim = Some(number()? as usize),
                "theta" => theta = Some(number()? as usize),
                "seed" => seed = Some(number()?),
                "M" | "m" => {
                    if number()? != 2 {
                        return Err(Error::config("DeskSMOP is bi-objective (M=2)"));
                    }
                }
                _ => return Err(Error::config(format!("unknown problem id field `{key}`"))),
            }
        }
        let dim = dim.ok_or_else(|| Error::config(format!("problem id `{id}` lacks D=")))?;
        let theta = theta.unwrap_or_else(|| default_sparsity(dim, 2).max(1));
        match seed {
            Some(s) => Self::seeded(landscape, dim, theta, s),
            None => Self::new(landscape, dim, theta),
        }
    }

    pub fn landscape(&self) -> Landscape {
        self.landscape
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn in_support(&self, i: usize) -> bool {
        self.in_support[i]
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn target(&self, i: usize) -> f64 {
        self.targets[i]
    }

    /// Distance-to-optimality term; 0 exactly on the Pareto set.
    pub fn g(&self, x: &[f64]) -> f64 {
        x.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &v)| {
                if self.in_support[i] {
                    self.landscape.support_term(v - self.targets[i])
                } else {
                    self.landscape.off_support_term(v)
                }
            })
            .sum()
    }

    /// A Pareto-optimal decision vector with position `x0`.
    pub fn pareto_optimal_point(&self, x0: f64) -> Vec<f64> {
        let mut x: Vec<f64> = (0..self.dim)
            .map(|i| if self.in_support[i] { self.targets[i] } else { 0.0 })
            .collect();
        x[0] = x0;
        x
    }

    /// `n` points `(t, 1 - t)` with `t` evenly spaced over `[0, 1]`.
    pub fn sample_front(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        sample_linear_front(n)
    }
}

pub(crate) fn sample_linear_front(n: usize) -> Result<Vec<Vec<f64>>> {
    if n < 2 {
        return Err(Error::contract("sample_front: need at least 2 points"));
    }
    let last = (n - 1) as f64;
    Ok((0..n)
        .map(|i| {
            let t = i as f64 / last;
            vec![t, 1.0 - t]
        })
        .collect())
}

impl Problem for SparseProblem {
    fn dim(&self) -> usize {
        self.dim
    }

    fn num_objectives(&self) -> usize {
        2
    }

    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim {
            return Err(Error::contract(format!(
                "evaluate: expected {} variables, got {}",
                self.dim,
                x.len()
            )));
        }
        if !self.bounds.contains(x) {
            return Err(Error::contract("evaluate: decision vector outside [0, 1]^D"));
        }
        let scale = 1.0 + self.g(x);
        Ok(vec![x[0] * scale, (1.0 - x[0]) * scale])
    }

    fn reference_front(&self, n: usize) -> Option<Vec<Vec<f64>>> {
        self.sample_front(n).ok()
    }
}

impl fmt::Display for SparseProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "desk-smop:{}:D={}:theta={}",
            self.landscape.id_name(),
            self.dim,
            self.support.len()
        )?;
        if let Some(seed) = self.seed {
            write!(f, ":seed={seed}")?;
        }
        Ok(())
    }
}

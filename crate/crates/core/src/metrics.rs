//! Quality indicators and the rank-sum comparison used for result tables.

use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::model::Population;

/// One row of a convergence curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryPoint {
    pub fe: u64,
    pub igd: f64,
    pub hv: f64,
    pub mean_sparsity: f64,
}

/// Indicator values over a run, FE strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IndicatorTrajectory {
    points: Vec<TrajectoryPoint>,
}

impl IndicatorTrajectory {
    pub fn push(&mut self, point: TrajectoryPoint) -> Result<()> {
        if let Some(last) = self.points.last() {
            if point.fe <= last.fe {
                return Err(Error::contract(format!(
                    "trajectory FE must increase ({} after {})",
                    point.fe, last.fe
                )));
            }
        }
        self.points.push(point);
        Ok(())
    }

    pub fn points(&self) -> &[TrajectoryPoint] {
        &self.points
    }

    pub fn first(&self) -> Option<&TrajectoryPoint> {
        self.points.first()
    }

    pub fn last(&self) -> Option<&TrajectoryPoint> {
        self.points.last()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Inverted generational distance: mean distance from each reference point to
/// its nearest approximation point.
///
/// The approximation set is sorted on the first objective; each reference
/// point starts at its insertion position and scans outwards until the gap in
/// that objective alone exceeds the best distance found. The nearest squared
/// distance is the same value a full scan would find.
pub fn igd(front_sample: &[Vec<f64>], approx: &[Vec<f64>]) -> Result<f64> {
    if approx.is_empty() {
        return Err(Error::contract("igd: empty approximation set"));
    }
    if front_sample.is_empty() {
        return Err(Error::contract("igd: empty reference set"));
    }
    let m = front_sample[0].len();
    if m == 0 || front_sample.iter().chain(approx).any(|p| p.len() != m) {
        return Err(Error::contract("igd: objective vectors differ in length"));
    }
    let mut sorted: Vec<&[f64]> = approx.iter().map(Vec::as_slice).collect();
    sorted.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let sq = |r: &[f64], a: &[f64]| r.iter().zip(a).map(|(x, y)| (x - y) * (x - y)).sum::<f64>();

    let total: f64 = front_sample
        .iter()
        .map(|r| {
            let start = sorted.partition_point(|a| a[0] < r[0]);
            let mut best = f64::INFINITY;
            for a in &sorted[start..] {
                let gap = a[0] - r[0];
                if gap * gap > best {
                    break;
                }
                best = best.min(sq(r, a));
            }
            for a in sorted[..start].iter().rev() {
                let gap = r[0] - a[0];
                if gap * gap > best {
                    break;
                }
                best = best.min(sq(r, a));
            }
            best.sqrt()
        })
        .sum();
    Ok(total / front_sample.len() as f64)
}

/// Exact 2-D hypervolume by sort-and-sweep.
///
/// Only points strictly dominating `reference` contribute.
pub fn hv2d(approx: &[Vec<f64>], reference: [f64; 2]) -> Result<f64> {
    if approx.iter().any(|p| p.len() != 2) {
        return Err(Error::contract("hv2d: points must have two objectives"));
    }
    let mut pts: Vec<(f64, f64)> = approx
        .iter()
        .filter(|p| p[0] < reference[0] && p[1] < reference[1])
        .map(|p| (p[0], p[1]))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let mut area = 0.0;
    let mut floor = reference[1];
    for (f1, f2) in pts {
        if f2 < floor {
            area += (reference[0] - f1) * (floor - f2);
            floor = f2;
        }
    }
    Ok(area)
}

/// Monte Carlo hypervolume estimate for any number of objectives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HypervolumeEstimate {
    pub value: f64,
    pub std_error: f64,
}

/// Approximate hypervolume by uniform sampling of the box between the ideal
/// point of `approx` and `reference`. Intended for `m >= 3`.
pub fn hv_monte_carlo<R: Rng + ?Sized>(
    approx: &[Vec<f64>],
    reference: &[f64],
    samples: usize,
    rng: &mut R,
) -> Result<HypervolumeEstimate> {
    let m = reference.len();
    if approx.iter().any(|p| p.len() != m) {
        return Err(Error::contract("hv_monte_carlo: dimension mismatch"));
    }
    if samples == 0 {
        return Err(Error::contract("hv_monte_carlo: need at least one sample"));
    }
    let pts: Vec<&Vec<f64>> = approx
        .iter()
        .filter(|p| p.iter().zip(reference).all(|(a, r)| a < r))
        .collect();
    if pts.is_empty() {
        return Ok(HypervolumeEstimate {
            value: 0.0,
            std_error: 0.0,
        });
    }
    let lower: Vec<f64> = (0..m)
        .map(|t| pts.iter().map(|p| p[t]).fold(f64::INFINITY, f64::min))
        .collect();
    let box_volume: f64 = lower.iter().zip(reference).map(|(l, r)| r - l).product();
    let mut sample = vec![0.0; m];
    let mut hits = 0usize;
    for _ in 0..samples {
        for t in 0..m {
            sample[t] = rng.gen_range(lower[t]..reference[t]);
        }
        if pts.iter().any(|p| p.iter().zip(&sample).all(|(a, s)| a <= s)) {
            hits += 1;
        }
    }
    let frac = hits as f64 / samples as f64;
    Ok(HypervolumeEstimate {
        value: box_volume * frac,
        std_error: box_volume * (frac * (1.0 - frac) / samples as f64).sqrt(),
    })
}

/// Mean fraction of active mask bits across the population.
pub fn mean_sparsity(population: &Population) -> Result<f64> {
    if population.is_empty() {
        return Err(Error::contract("mean_sparsity: empty population"));
    }
    let total: f64 = population
        .iter()
        .map(|s| s.mask.support_size() as f64 / s.dim().max(1) as f64)
        .sum();
    Ok(total / population.len() as f64)
}

/// Outcome of a two-sided rank-sum comparison, read as "`a` relative to `b`"
/// with lower values better.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Better,
    Worse,
    Approx,
}

impl Verdict {
    /// Table symbol for a compared algorithm: `+` better, `-` worse, `≈` otherwise.
    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Better => "+",
            Verdict::Worse => "-",
            Verdict::Approx => "≈",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MannWhitney {
    /// U statistic of the first sample.
    pub u: f64,
    pub z: f64,
    pub p_value: f64,
}

/// Mann-Whitney U with the tie-corrected normal approximation.
///
/// Returns `None` when every observation is equal (zero variance).
pub fn mann_whitney(a: &[f64], b: &[f64]) -> Option<MannWhitney> {
    let (n1, n2) = (a.len(), b.len());
    if n1 == 0 || n2 == 0 {
        return None;
    }
    let mut pooled: Vec<(f64, bool)> = a
        .iter()
        .map(|&v| (v, true))
        .chain(b.iter().map(|&v| (v, false)))
        .collect();
    pooled.sort_by(|x, y| x.0.total_cmp(&y.0));

    let n = pooled.len();
    let mut rank_sum_a = 0.0;
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let avg_rank = (i + 1 + j) as f64 / 2.0;
        let from_a = pooled[i..j].iter().filter(|(_, is_a)| *is_a).count();
        rank_sum_a += avg_rank * from_a as f64;
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }

    let (n1f, n2f, nf) = (n1 as f64, n2 as f64, n as f64);
    let u = rank_sum_a - n1f * (n1f + 1.0) / 2.0;
    let mean = n1f * n2f / 2.0;
    let variance = n1f * n2f / 12.0 * ((nf + 1.0) - tie_term / (nf * (nf - 1.0)));
    if variance <= 0.0 {
        return None;
    }
    let z = (u - mean) / variance.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("standard normal");
    let p_value = (2.0 * (1.0 - normal.cdf(z.abs()))).min(1.0);
    Some(MannWhitney { u, z, p_value })
}

/// Two-sided Wilcoxon rank-sum test at level `alpha`; direction by median.
pub fn rank_sum_test(a: &[f64], b: &[f64], alpha: f64) -> Result<Verdict> {
    if a.len() < 5 || b.len() < 5 {
        return Err(Error::Statistics(format!(
            "rank-sum test needs at least 5 samples per side (got {} and {})",
            a.len(),
            b.len()
        )));
    }
    let Some(mw) = mann_whitney(a, b) else {
        return Ok(Verdict::Approx);
    };
    if mw.p_value >= alpha {
        return Ok(Verdict::Approx);
    }
    let (ma, mb) = (median(a), median(b));
    let a_lower = if ma != mb {
        ma < mb
    } else {
        mw.u < (a.len() * b.len()) as f64 / 2.0
    };
    Ok(if a_lower { Verdict::Better } else { Verdict::Worse })
}

pub fn median(values: &[f64]) -> f64 {
    quantile(values, 0.5)
}

/// Interquartile range with linear interpolation between order statistics.
pub fn iqr(values: &[f64]) -> f64 {
    quantile(values, 0.75) - quantile(values, 0.25)
}

/// Linear-interpolation quantile; NaN for empty input.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

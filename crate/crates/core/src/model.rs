//! Solution encoding shared by every module.
//!
//! A candidate is a binary activation mask paired with a real vector; the
//! decision vector the problem sees is their element-wise product. Reals under
//! inactive bits are kept, so they can resurface after a later mask flip.

use std::ops::{Deref, DerefMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-variable box constraints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::contract("bounds: lower/upper length mismatch"));
        }
        for (i, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !lo.is_finite() || !hi.is_finite() {
                return Err(Error::config(format!("bounds: variable {i} is not finite")));
            }
            if lo > hi {
                return Err(Error::config(format!("bounds: variable {i} has lower > upper")));
            }
        }
        Ok(Self { lower, upper })
    }

    /// `dim` copies of `[lower, upper]`.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Self {
        Self {
            lower: vec![lower; dim],
            upper: vec![upper; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn contains(&self, values: &[f64]) -> bool {
        values.len() == self.dim()
            && values
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&v, (&lo, &hi))| v >= lo && v <= hi)
    }

    pub fn clamp(&self, i: usize, value: f64) -> f64 {
        value.clamp(self.lower[i], self.upper[i])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryMask(Vec<bool>);

impl BinaryMask {
    pub fn zeros(dim: usize) -> Self {
        Self(vec![false; dim])
    }

    pub fn ones(dim: usize) -> Self {
        Self(vec![true; dim])
    }

    /// Mask with exactly one active bit.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut mask = Self::zeros(dim);
        mask.0[index] = true;
        mask
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// Indices of active bits, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.positions(true)
    }

    /// Indices of inactive bits, ascending.
    pub fn zero_positions(&self) -> Vec<usize> {
        self.positions(false)
    }

    fn positions(&self, value: bool) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| (b == value).then_some(i))
            .collect()
    }

    /// Positions where the two masks differ.
    pub fn xor_positions(&self, other: &Self) -> Vec<usize> {
        self.0
            .iter()
            .zip(&other.0)
            .enumerate()
            .filter_map(|(i, (a, b))| (a != b).then_some(i))
            .collect()
    }

    pub fn hamming(&self, other: &Self) -> usize {
        self.0.iter().zip(&other.0).filter(|(a, b)| a != b).count()
    }

    /// `0101...` rendering used by record files.
    pub fn to_bit_string(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub mask: BinaryMask,
    pub reals: RealVector,
    /// Cached objective vector; `None` until evaluated.
    pub objectives: Option<Vec<f64>>,
}

impl Solution {
    pub fn new(mask: BinaryMask, reals: RealVector) -> Result<Self> {
        if mask.len() != reals.len() {
            return Err(Error::contract(format!(
                "solution: mask length {} != real length {}",
                mask.len(),
                reals.len()
            )));
        }
        Ok(Self {
            mask,
            reals,
            objectives: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.mask.len()
    }

    pub fn is_evaluated(&self) -> bool {
        self.objectives.is_some()
    }

    /// Objectives of an evaluated solution.
    ///
    /// Panics if the solution has not been evaluated; callers inside the
    /// engine only reach this after a batch evaluation.
    pub fn objectives(&self) -> &[f64] {
        self.objectives
            .as_deref()
            .expect("solution has not been evaluated")
    }

    pub fn decode(&self) -> Vec<f64> {
        decode_parts(&self.mask, &self.reals)
    }
}

/// Hadamard product of mask and reals.
pub fn decode(solution: &Solution) -> Result<Vec<f64>> {
    if solution.mask.len() != solution.reals.len() {
        return Err(Error::contract("decode: mask and reals differ in length"));
    }
    Ok(solution.decode())
}

fn decode_parts(mask: &BinaryMask, reals: &RealVector) -> Vec<f64> {
    mask.bits()
        .iter()
        .zip(reals.values())
        .map(|(&bit, &v)| if bit { v } else { 0.0 })
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Population {
    members: Vec<Solution>,
}

impl Population {
    pub fn new(members: Vec<Solution>) -> Self {
        Self { members }
    }

    pub fn into_members(self) -> Vec<Solution> {
        self.members
    }

    /// Objective vectors of every member, in order. Panics on unevaluated members.
    pub fn objectives(&self) -> Vec<Vec<f64>> {
        self.members.iter().map(|s| s.objectives().to_vec()).collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.members.first().map(Solution::dim)
    }

    /// Fraction of members with bit `i` set, for every `i`.
    pub fn bit_fractions(&self) -> Vec<f64> {
        let dim = self.dim().unwrap_or(0);
        let mut counts = vec![0usize; dim];
        for s in &self.members {
            for (c, &b) in counts.iter_mut().zip(s.mask.bits()) {
                *c += b as usize;
            }
        }
        let n = self.members.len().max(1) as f64;
        counts.into_iter().map(|c| c as f64 / n).collect()
    }
}

impl Deref for Population {
    type Target = Vec<Solution>;

    fn deref(&self) -> &Self::Target {
        &self.members
    }
}

impl DerefMut for Population {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.members
    }
}

impl FromIterator<Solution> for Population {
    fn from_iter<I: IntoIterator<Item = Solution>>(iter: I) -> Self {
        Self::new(iter.into_iter().collect())
    }
}

impl IntoIterator for Population {
    type Item = Solution;
    type IntoIter = std::vec::IntoIter<Solution>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.into_iter()
    }
}

/// Per-variable activation probabilities in `[0, 1]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityVector(Vec<f64>);

impl ProbabilityVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if let Some(i) = probs.iter().position(|p| !(0.0..=1.0).contains(p)) {
            return Err(Error::contract(format!(
                "probability vector: component {i} = {} outside [0, 1]",
                probs[i]
            )));
        }
        Ok(Self(probs))
    }

    pub fn uniform(dim: usize, value: f64) -> Self {
        Self(vec![value.clamp(0.0, 1.0); dim])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.0[i]
    }

    pub fn min(&self) -> f64 {
        self.0.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.0.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// `max - min`; zero for an empty vector.
    pub fn spread(&self) -> f64 {
        if self.0.is_empty() {
            0.0
        } else {
            self.max() - self.min()
        }
    }
}

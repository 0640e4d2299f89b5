use crate::error::Result;
use crate::model::Bounds;

/// An unconstrained multi-objective minimization problem over a box.
///
/// `evaluate` must be pure: the engine may evaluate a batch of offspring in
/// parallel, and the result cannot depend on evaluation order.
pub trait Problem: Sync {
    fn dim(&self) -> usize;

    fn num_objectives(&self) -> usize;

    fn bounds(&self) -> &Bounds;

    fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>>;

    /// `n` points sampled from the true Pareto front, when it is known.
    fn reference_front(&self, _n: usize) -> Option<Vec<Vec<f64>>> {
        None
    }
}

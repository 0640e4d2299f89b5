//! Non-dominated sorting and SPEA2 environmental selection.
//!
//! Everything here works on plain objective vectors so the same code serves
//! the engine, the CPV probe and the tests.

use std::cmp::Ordering;

use crate::dominance::dominates_unchecked;
use crate::error::{Error, Result};
use crate::model::Population;

/// Front number per member, 1 = non-dominated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontAssignment(pub Vec<usize>);

impl FrontAssignment {
    pub fn front(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn num_fronts(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Indices in front `k` (1-based), ascending.
    pub fn members_of(&self, k: usize) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] == k).collect()
    }
}

fn check_objectives(objs: &[Vec<f64>], what: &str) -> Result<()> {
    let Some(first) = objs.first() else {
        return Err(Error::contract(format!("{what}: empty objective set")));
    };
    let m = first.len();
    if objs.iter().any(|o| o.len() != m) {
        return Err(Error::contract(format!("{what}: objective vectors differ in length")));
    }
    Ok(())
}

/// Pareto front peeling via domination counts.
pub fn nondominated_sort(objs: &[Vec<f64>]) -> Result<FrontAssignment> {
    check_objectives(objs, "nondominated_sort")?;
    let n = objs.len();
    let mut dominated_by_count = vec![0usize; n];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if dominates_unchecked(&objs[i], &objs[j]) {
                dominates_list[i].push(j);
                dominated_by_count[j] += 1;
            } else if dominates_unchecked(&objs[j], &objs[i]) {
                dominates_list[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }

    let mut fronts = vec![0usize; n];
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_by_count[i] == 0).collect();
    let mut k = 1;
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            fronts[i] = k;
            for &j in &dominates_list[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        current = next;
        k += 1;
    }
    Ok(FrontAssignment(fronts))
}

/// SPEA2 fitness: raw strength-based fitness plus a k-th-neighbour density term.
///
/// Scores below 1 mark exactly the non-dominated members.
pub fn spea2_fitness(objs: &[Vec<f64>]) -> Result<Vec<f64>> {
    check_objectives(objs, "spea2_fitness")?;
    let n = objs.len();
    let mut dom = vec![false; n * n];
    let mut strength = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && dominates_unchecked(&objs[i], &objs[j]) {
                dom[i * n + j] = true;
                strength[i] += 1;
            }
        }
    }

    let k = ((n as f64).sqrt().floor() as usize).clamp(1, n.saturating_sub(1).max(1));
    let mut dists = Vec::with_capacity(n);
    let fitness = (0..n)
        .map(|i| {
            let raw: usize = (0..n).filter(|&j| dom[j * n + i]).map(|j| strength[j]).sum();
            dists.clear();
            dists.extend((0..n).filter(|&j| j != i).map(|j| euclidean(&objs[i], &objs[j])));
            let sigma = if dists.len() >= k {
                let (_, kth, _) = dists.select_nth_unstable_by(k - 1, f64::total_cmp);
                *kth
            } else {
                0.0
            };
            raw as f64 + 1.0 / (sigma + 2.0)
        })
        .collect();
    Ok(fitness)
}

/// Picks `n` survivors; returns their indices in ascending order.
///
/// Non-dominated members are kept when they fit and topped up by best
/// fitness; otherwise the member with the lexicographically smallest sorted
/// neighbour-distance profile is removed until `n` remain (equal profiles:
/// the larger index goes).
pub fn spea2_select_indices(objs: &[Vec<f64>], n: usize) -> Result<Vec<usize>> {
    check_objectives(objs, "spea2_environmental_selection")?;
    if n == 0 || objs.len() < n {
        return Err(Error::contract(format!(
            "spea2_environmental_selection: cannot select {n} of {}",
            objs.len()
        )));
    }
    let fitness = spea2_fitness(objs)?;
    let nondominated: Vec<usize> = (0..objs.len()).filter(|&i| fitness[i] < 1.0).collect();

    let mut chosen = if nondominated.len() <= n {
        let mut order: Vec<usize> = (0..objs.len()).collect();
        order.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
        order.truncate(n);
        order
    } else {
        truncate(objs, nondominated, n)
    };
    chosen.sort_unstable();
    Ok(chosen)
}

fn truncate(objs: &[Vec<f64>], candidates: Vec<usize>, n: usize) -> Vec<usize> {
    let size = candidates.len();
    // neighbour lists (distance, local index), sorted ascending
    let neighbours: Vec<Vec<(f64, usize)>> = (0..size)
        .map(|a| {
            let mut row: Vec<(f64, usize)> = (0..size)
                .filter(|&b| b != a)
                .map(|b| (euclidean(&objs[candidates[a]], &objs[candidates[b]]), b))
                .collect();
            row.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)));
            row
        })
        .collect();

    let mut alive = vec![true; size];
    let mut remaining = size;
    while remaining > n {
        let mut victim: Option<usize> = None;
        for a in (0..size).filter(|&a| alive[a]) {
            victim = match victim {
                None => Some(a),
                Some(v) => match compare_profiles(&neighbours[a], &neighbours[v], &alive) {
                    Ordering::Less => Some(a),
                    // a > v in index, so a wins an exact tie
                    Ordering::Equal => Some(a.max(v)),
                    Ordering::Greater => Some(v),
                },
            };
        }
        let v = victim.expect("remaining > n >= 1 guarantees a live candidate");
        alive[v] = false;
        remaining -= 1;
    }
    (0..size).filter(|&a| alive[a]).map(|a| candidates[a]).collect()
}

fn compare_profiles(a: &[(f64, usize)], b: &[(f64, usize)], alive: &[bool]) -> Ordering {
    let mut xs = a.iter().filter(|(_, j)| alive[*j]).map(|(d, _)| *d);
    let mut ys = b.iter().filter(|(_, j)| alive[*j]).map(|(d, _)| *d);
    loop {
        match (xs.next(), ys.next()) {
            (Some(x), Some(y)) => match x.total_cmp(&y) {
                Ordering::Equal => continue,
                other => return other,
            },
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
        }
    }
}

/// Population-level wrapper around [`spea2_select_indices`].
pub fn spea2_environmental_selection(population: &Population, n: usize) -> Result<Population> {
    if population.iter().any(|s| !s.is_evaluated()) {
        return Err(Error::contract("spea2_environmental_selection: unevaluated member"));
    }
    let idx = spea2_select_indices(&population.objectives(), n)?;
    Ok(idx.into_iter().map(|i| population[i].clone()).collect())
}

pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::record::RunRecord;
use crate::error::{Error, Result};
use crate::metrics::{iqr, mann_whitney, median, rank_sum_test, Verdict};

/// Significance level of the rank-sum verdicts.
pub const ALPHA: f64 = 0.05;

/// One indicator compared across two record sets.
#[derive(Clone, Debug, PartialEq)]
pub struct IndicatorRow {
    pub indicator: &'static str,
    pub median_a: f64,
    pub iqr_a: f64,
    pub median_b: f64,
    pub iqr_b: f64,
    pub p_value: f64,
    /// How `a` fares against `b`.
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub problem_id: String,
    pub label_a: String,
    pub label_b: String,
    pub runs_a: usize,
    pub runs_b: usize,
    pub rows: Vec<IndicatorRow>,
}

impl Comparison {
    pub fn row(&self, indicator: &str) -> Option<&IndicatorRow> {
        self.rows.iter().find(|r| r.indicator == indicator)
    }

    /// Fixed-width table: `median (IQR)` per side and the verdict of A against B.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "problem {}", self.problem_id);
        let _ = writeln!(
            out,
            "A = {} ({} runs), B = {} ({} runs); verdict is A against B",
            self.label_a, self.runs_a, self.label_b, self.runs_b
        );
        let _ = writeln!(
            out,
            "{:<10} {:>24} {:>24} {:>9} {:>3}",
            "indicator", "A median (IQR)", "B median (IQR)", "p", ""
        );
        for r in &self.rows {
            let a = format!("{:.4e} ({:.2e})", r.median_a, r.iqr_a);
            let b = format!("{:.4e} ({:.2e})", r.median_b, r.iqr_b);
            let _ = writeln!(
                out,
                "{:<10} {:>24} {:>24} {:>9.3e} {:>3}",
                r.indicator,
                a,
                b,
                r.p_value,
                r.verdict.symbol()
            );
        }
        out
    }

    /// `problem,indicator,label_a,median_a,iqr_a,label_b,median_b,iqr_b,p_value,verdict`.
    pub fn csv(&self) -> String {
        let mut out =
            String::from("problem,indicator,label_a,median_a,iqr_a,label_b,median_b,iqr_b,p_value,verdict\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                self.problem_id,
                r.indicator,
                self.label_a,
                r.median_a,
                r.iqr_a,
                self.label_b,
                r.median_b,
                r.iqr_b,
                r.p_value,
                r.verdict.symbol()
            );
        }
        out
    }
}

/// Compares final IGD (lower is better) and HV (higher is better).
pub fn compare_records(a: &[RunRecord], b: &[RunRecord]) -> Result<Comparison> {
    for (side, set) in [("A", a), ("B", b)] {
        if set.len() < 5 {
            return Err(Error::Statistics(format!(
                "side {side} has {} record(s); at least 5 are needed",
                set.len()
            )));
        }
    }
    let problem_id = a[0].problem_id.clone();
    if let Some(odd) = a.iter().chain(b).find(|r| r.problem_id != problem_id) {
        return Err(Error::Statistics(format!(
            "records mix problems `{problem_id}` and `{}`",
            odd.problem_id
        )));
    }

    let igd = |set: &[RunRecord]| set.iter().map(|r| r.final_indicators.igd).collect::<Vec<_>>();
    let hv = |set: &[RunRecord]| set.iter().map(|r| r.final_indicators.hv).collect::<Vec<_>>();
    let neg = |v: Vec<f64>| v.into_iter().map(|x| -x).collect::<Vec<_>>();

    let row = |indicator, va: Vec<f64>, vb: Vec<f64>, lower_better: bool| -> Result<IndicatorRow> {
        // rank_sum_test reads "lower is better"
        let (ta, tb) = if lower_better {
            (va.clone(), vb.clone())
        } else {
            (neg(va.clone()), neg(vb.clone()))
        };
        Ok(IndicatorRow {
            indicator,
            median_a: median(&va),
            iqr_a: iqr(&va),
            median_b: median(&vb),
            iqr_b: iqr(&vb),
            p_value: mann_whitney(&ta, &tb).map_or(1.0, |m| m.p_value),
            verdict: rank_sum_test(&ta, &tb, ALPHA)?,
        })
    };

    Ok(Comparison {
        problem_id,
        label_a: side_label(a),
        label_b: side_label(b),
        runs_a: a.len(),
        runs_b: b.len(),
        rows: vec![row("igd", igd(a), igd(b), true)?, row("hv", hv(a), hv(b), false)?],
    })
}

fn side_label(set: &[RunRecord]) -> String {
    let first = set[0].variant;
    if set.iter().all(|r| r.variant == first) {
        first.to_string()
    } else {
        "mixed".to_string()
    }
}

/// Paths matched by a glob pattern, or every `*.record.json` in a directory.
pub fn expand_records(pattern: &str) -> Result<Vec<PathBuf>> {
    let pattern = if Path::new(pattern).is_dir() {
        format!("{}/*.record.json", pattern.trim_end_matches('/'))
    } else {
        pattern.to_string()
    };
    let mut paths: Vec<PathBuf> = glob::glob(&pattern)
        .map_err(|e| Error::config(format!("bad pattern `{pattern}`: {e}")))?
        .filter_map(|entry| entry.ok())
        .collect();
    paths.sort();
    Ok(paths)
}

pub fn load_records(pattern: &str) -> Result<Vec<RunRecord>> {
    expand_records(pattern)?
        .iter()
        .map(|p| RunRecord::load(p))
        .collect()
}

/// Loads both sides and compares them.
pub fn compare(pattern_a: &str, pattern_b: &str) -> Result<Comparison> {
    compare_records(&load_records(pattern_a)?, &load_records(pattern_b)?)
}

//! Accuracy and work metrics, and the CSV schema experiment runs emit.

use std::io::Write;

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::Result;
use crate::graph::CscGraph;
use crate::solvers::SolveReport;
use crate::sparse::{desc_then_index, SparseVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exclusion {
    None,
    /// Drop the seed and its out-neighbors before ranking.
    SeedAndNeighbors,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionReport {
    /// Requested set size.
    pub k: usize,
    /// Size of the true set actually compared (smaller than `k` when fewer
    /// candidates survive exclusion).
    pub k_effective: usize,
    pub precision: f64,
    pub excluded: Exclusion,
}

fn top_k(v: &SparseVector, k: usize, skip: &FxHashSet<usize>) -> Vec<usize> {
    let mut cands: Vec<(usize, f64)> = v
        .iter()
        .filter(|(i, x)| *x != 0.0 && !skip.contains(i))
        .map(|(i, x)| (i, x.abs()))
        .collect();
    cands.sort_by(|a, b| desc_then_index(*a, *b));
    cands.truncate(k);
    cands.into_iter().map(|(i, _)| i).collect()
}

/// `|S ∩ T| / |S|` for the top-`k` sets of `truth` (S) and `approx` (T),
/// ranked by magnitude with ties to the smaller node. Only nonzero entries
/// are candidates.
pub fn precision_at_k(
    approx: &SparseVector,
    truth: &SparseVector,
    k: usize,
    exclude: Exclusion,
    g: &CscGraph,
    c: usize,
) -> PrecisionReport {
    let mut skip = FxHashSet::default();
    if exclude == Exclusion::SeedAndNeighbors {
        skip.insert(c);
        skip.extend(g.col_rows(c).iter().map(|&r| r as usize));
    }
    let truth_set = top_k(truth, k, &skip);
    let approx_set: FxHashSet<usize> = top_k(approx, k, &skip).into_iter().collect();
    let k_effective = truth_set.len();
    let hits = truth_set.iter().filter(|i| approx_set.contains(i)).count();
    PrecisionReport {
        k,
        k_effective,
        precision: if k_effective == 0 {
            1.0
        } else {
            hits as f64 / k_effective as f64
        },
        excluded: exclude,
    }
}

/// `sum_i |approx_i - truth_i|` over the union of supports.
pub fn one_norm_error(approx: &SparseVector, truth: &SparseVector) -> f64 {
    let mut total: f64 = truth.iter().map(|(i, t)| (approx.get(i) - t).abs()).sum();
    total += approx
        .iter()
        .filter(|(i, _)| !truth.contains(*i))
        .map(|(_, a)| a.abs())
        .sum::<f64>();
    total
}

/// Error left after keeping only the `m` largest-magnitude entries, for
/// `m = 1..=nnz`.
pub fn nnz_error_curve(truth: &SparseVector) -> Vec<(usize, f64)> {
    let mut mags: Vec<f64> = truth
        .iter()
        .map(|(_, v)| v.abs())
        .filter(|v| *v > 0.0)
        .collect();
    mags.sort_by(|a, b| b.total_cmp(a));
    // suffix sums, smallest first
    let mut tail = vec![0.0; mags.len() + 1];
    for m in (0..mags.len()).rev() {
        tail[m] = tail[m + 1] + mags[m];
    }
    (1..=mags.len()).map(|m| (m, tail[m])).collect()
}

/// Edges read divided by `nnz(P)`; one full matvec is 1.0.
pub fn work_accounting(report: &SolveReport, g: &CscGraph) -> f64 {
    if g.nnz() == 0 {
        0.0
    } else {
        report.edge_touches as f64 / g.nnz() as f64
    }
}

/// One CSV row: `graph,seed,algorithm,param,metric,value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricRow {
    pub graph: String,
    pub seed: usize,
    pub algorithm: String,
    /// `eps=<value>` or `z=<value>`.
    pub param: String,
    pub metric: String,
    pub value: f64,
}

pub const CSV_HEADER: [&str; 6] = ["graph", "seed", "algorithm", "param", "metric", "value"];

/// Writes rows under the fixed header. Floats use the shortest round-trip
/// representation.
pub fn write_csv<W: Write>(out: W, rows: &[MetricRow]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

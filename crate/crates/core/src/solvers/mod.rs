//! Column estimators for `exp(P) e_c`.
//!
//! `gexpm` and `gexpmq` relax the block system whose solution blocks are the
//! Taylor terms `v_j = P^j e_c / j!`:
//!
//! ```text
//! [ I                  ] [v_0]   [e_c]
//! [ -P/1   I           ] [v_1] = [ 0 ]
//! [       -P/2   I     ] [...]   [...]
//! [              -P/N I] [v_N]   [ 0 ]
//! ```
//!
//! The system is never formed. Residual entries are addressed by
//! `(block, node)`, and relaxing `r_j[i] = m` adds `m` to `x_i` and
//! `m/(j+1) * P e_i` to block `j+1`. `expmimv` instead runs Horner's rule with
//! truncated matrix-vector products.

mod expmimv;
mod gexpm;
mod gexpmq;
mod heap;

use std::fmt;
use std::str::FromStr;

pub use expmimv::{expmimv, top_z_filter};
pub use gexpm::{gexpm, GexpmSolver};
pub use gexpmq::{gexpmq, GexpmqSolver, QueueEvent, ResidualQueueState};
pub use heap::{HeapEntry, IndexedMaxHeap, ResidualHeapState};

use crate::error::{Error, Result};
use crate::graph::CscGraph;
use crate::sparse::SparseVector;
use crate::taylor::ThresholdRule;

/// Address of one residual entry: node `node` in Taylor block `block`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidualKey {
    pub block: usize,
    pub node: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Gexpm,
    Gexpmq,
    Expmimv,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Gexpm => "gexpm",
            Algorithm::Gexpmq => "gexpmq",
            Algorithm::Expmimv => "expmimv",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gexpm" => Ok(Algorithm::Gexpm),
            "gexpmq" => Ok(Algorithm::Gexpmq),
            "expmimv" => Ok(Algorithm::Expmimv),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveOptions {
    /// Stop after this many relaxations without error; the report is then
    /// marked unconverged. Used for work-versus-accuracy studies.
    pub step_budget: Option<usize>,
    /// Hard cap on relaxations. Hitting it is an error. Defaults to
    /// `100 * nnz(P)`.
    pub relaxation_cap: Option<usize>,
    pub threshold_rule: ThresholdRule,
}

impl SolveOptions {
    pub(crate) fn cap_for(&self, g: &CscGraph) -> usize {
        self.relaxation_cap.unwrap_or(100 * g.nnz().max(1))
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    pub x: SparseVector,
    /// Weighted residual sum at exit (0 for `expmimv`, which has none).
    pub final_tracker: f64,
    /// Taylor degree used.
    pub degree: usize,
    /// Relaxations performed (Horner steps for `expmimv`).
    pub steps: usize,
    /// Queue entries dropped below threshold (`gexpmq` only).
    pub discarded: usize,
    /// Weighted magnitude of the dropped entries (`gexpmq` only).
    pub skipped_mass: f64,
    pub edge_touches: usize,
    pub effective_matvecs: f64,
    pub wallclock: f64,
    /// Whether the solver's own stopping rule fired (false when a step budget
    /// cut it short).
    pub converged: bool,
    /// `expmimv`: nonzeros of each truncated product `P [x]_z`.
    pub product_nnz: Vec<usize>,
}

/// One completed relaxation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Relaxation {
    pub key: ResidualKey,
    pub value: f64,
    pub tracker_delta: f64,
    pub edges_touched: usize,
}

/// Residual containers that the relaxation kernel can write into.
pub trait ResidualStore {
    /// Adds `delta` at `key`, returning the old and new values.
    fn add_residual(&mut self, key: ResidualKey, delta: f64) -> (f64, f64);
}

/// Relaxes one residual entry that the caller has already removed from its
/// store: `x_i += m`, and for `j < N`, block `j+1` gains `m/(j+1) * P e_i`.
///
/// With `fold_last`, mass headed for block `N` goes straight into `x`, since
/// relaxing a block-`N` entry creates no further residual.
///
/// The returned tracker change is exact: `-psi_j |m|` plus `psi_{j+1}` times
/// the change in magnitude of each touched entry.
pub fn relax_step<S: ResidualStore>(
    g: &CscGraph,
    psi: &[f64],
    store: &mut S,
    x: &mut SparseVector,
    key: ResidualKey,
    m: f64,
    fold_last: bool,
) -> Relaxation {
    let degree = psi.len() - 1;
    let ResidualKey { block, node } = key;
    x.add(node, m);
    let mut tracker_delta = -psi[block] * m.abs();
    let mut edges_touched = 0;
    if block < degree {
        let next = block + 1;
        let scale = m / next as f64;
        let rows = g.col_rows(node);
        let vals = g.col_values(node);
        edges_touched = rows.len();
        if fold_last && next == degree {
            for (&r, &p) in rows.iter().zip(vals) {
                x.add(r as usize, scale * p);
            }
        } else {
            let weight = psi[next];
            for (&r, &p) in rows.iter().zip(vals) {
                let (old, new) = store.add_residual(
                    ResidualKey {
                        block: next,
                        node: r as usize,
                    },
                    scale * p,
                );
                tracker_delta += weight * (new.abs() - old.abs());
            }
        }
    }
    Relaxation {
        key,
        value: m,
        tracker_delta,
        edges_touched,
    }
}

pub(crate) fn check_inputs(g: &CscGraph, c: usize, eps: f64) -> Result<()> {
    g.check_node(c)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidTolerance(eps));
    }
    g.check_substochastic()
}

pub(crate) fn effective_matvecs(edge_touches: usize, g: &CscGraph) -> f64 {
    if g.nnz() == 0 {
        0.0
    } else {
        edge_touches as f64 / g.nnz() as f64
    }
}

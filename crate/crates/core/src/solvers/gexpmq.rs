use std::collections::VecDeque;
use std::time::Instant;

use rustc_hash::FxHashMap;

use super::{
    check_inputs, effective_matvecs, relax_step, Algorithm, Relaxation, ResidualKey, ResidualStore,
    SolveOptions, SolveReport,
};
use crate::error::{Error, Result};
use crate::graph::CscGraph;
use crate::sparse::SparseVector;
use crate::taylor::{queue_thresholds_with, TaylorParams};

/// Residual container for `gexpmq`.
///
/// An entry is enqueued the first time it becomes nonzero. Relaxing block `j`
/// only writes block `j+1`, so the queue is always block-sorted and the queue
/// length when block `j` starts (`Z_j`) bounds that block's nonzeros.
#[derive(Debug, Clone, Default)]
pub struct ResidualQueueState {
    pub queue: VecDeque<ResidualKey>,
    pub resid: FxHashMap<ResidualKey, f64>,
    /// `Z_j`, recorded when block `j` begins draining.
    pub block_sizes: Vec<Option<usize>>,
    pub tracker: f64,
}

impl ResidualQueueState {
    /// Recomputes the weighted residual sum from the stored entries.
    pub fn recompute_tracker(&self, psi: &[f64]) -> f64 {
        self.resid.iter().map(|(k, v)| psi[k.block] * v.abs()).sum()
    }
}

impl ResidualStore for ResidualQueueState {
    fn add_residual(&mut self, key: ResidualKey, delta: f64) -> (f64, f64) {
        let mut fresh = false;
        let slot = self.resid.entry(key).or_insert_with(|| {
            fresh = true;
            0.0
        });
        let old = *slot;
        *slot += delta;
        let new = *slot;
        if fresh {
            self.queue.push_back(key);
        }
        (old, new)
    }
}

/// What happened to the entry taken off the queue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QueueEvent {
    Relaxed(Relaxation),
    /// Below the block threshold; left in the residual, never revisited.
    Discarded {
        key: ResidualKey,
        value: f64,
    },
}

/// Queue-ordered relaxation with per-block thresholds
/// `theta*eps / (N psi_j(1) Z_j)`.
pub struct GexpmqSolver<'g> {
    g: &'g CscGraph,
    params: TaylorParams,
    thresholds: Vec<f64>,
    state: ResidualQueueState,
    x: SparseVector,
    current_block: Option<usize>,
    relax_tol: f64,
    steps: usize,
    discarded: usize,
    skipped_mass: f64,
    edge_touches: usize,
    cap: usize,
    budget: Option<usize>,
    started: Instant,
}

impl<'g> GexpmqSolver<'g> {
    pub fn new(g: &'g CscGraph, c: usize, eps: f64, opts: &SolveOptions) -> Result<Self> {
        check_inputs(g, c, eps)?;
        let params = TaylorParams::for_tolerance(eps)?;
        let thresholds = queue_thresholds_with(&params, opts.threshold_rule);
        let mut state = ResidualQueueState {
            block_sizes: vec![None; params.degree + 1],
            ..Default::default()
        };
        state.add_residual(ResidualKey { block: 0, node: c }, 1.0);
        state.tracker = params.psi[0];
        Ok(Self {
            g,
            params,
            thresholds,
            state,
            x: SparseVector::new(),
            current_block: None,
            relax_tol: 0.0,
            steps: 0,
            discarded: 0,
            skipped_mass: 0.0,
            edge_touches: 0,
            cap: opts.cap_for(g),
            budget: opts.step_budget,
            started: Instant::now(),
        })
    }

    pub fn params(&self) -> &TaylorParams {
        &self.params
    }

    pub fn tracker(&self) -> f64 {
        self.state.tracker
    }

    pub fn residual(&self) -> &ResidualQueueState {
        &self.state
    }

    pub fn x(&self) -> &SparseVector {
        &self.x
    }

    pub fn is_converged(&self) -> bool {
        self.state.tracker <= self.params.residual_tol() || self.state.queue.is_empty()
    }

    /// Takes the next queue entry and relaxes or discards it. Returns `None`
    /// once converged or out of step budget.
    pub fn step(&mut self) -> Result<Option<QueueEvent>> {
        if self.is_converged() || self.budget.is_some_and(|b| self.steps >= b) {
            return Ok(None);
        }
        if self.steps >= self.cap {
            return Err(Error::IterationCap { cap: self.cap });
        }
        let key = self
            .state
            .queue
            .pop_front()
            .ok_or_else(|| Error::Internal("queue drained unexpectedly".into()))?;
        if self.current_block != Some(key.block) {
            if self.current_block.is_some_and(|b| b > key.block) {
                return Err(Error::Internal(format!(
                    "queue out of block order: block {} after {:?}",
                    key.block, self.current_block
                )));
            }
            let z = self.state.queue.len() + 1;
            self.state.block_sizes[key.block] = Some(z);
            self.relax_tol = self.thresholds[key.block] / z as f64;
            self.current_block = Some(key.block);
        }
        let value = self.state.resid.get(&key).copied().unwrap_or(0.0);
        if value.abs() < self.relax_tol {
            self.discarded += 1;
            self.skipped_mass += self.params.psi[key.block] * value.abs();
            return Ok(Some(QueueEvent::Discarded { key, value }));
        }
        self.state.resid.remove(&key);
        let relax = relax_step(
            self.g,
            &self.params.psi,
            &mut self.state,
            &mut self.x,
            key,
            value,
            true,
        );
        self.state.tracker += relax.tracker_delta;
        self.steps += 1;
        self.edge_touches += relax.edges_touched;
        Ok(Some(QueueEvent::Relaxed(relax)))
    }

    pub fn run(&mut self) -> Result<()> {
        while self.step()?.is_some() {}
        Ok(())
    }

    pub fn finish(self) -> SolveReport {
        let converged = self.is_converged();
        let mut x = self.x;
        x.compact();
        SolveReport {
            algorithm: Algorithm::Gexpmq,
            x,
            final_tracker: self.state.tracker,
            degree: self.params.degree,
            steps: self.steps,
            discarded: self.discarded,
            skipped_mass: self.skipped_mass,
            edge_touches: self.edge_touches,
            effective_matvecs: effective_matvecs(self.edge_touches, self.g),
            wallclock: self.started.elapsed().as_secs_f64(),
            converged,
            product_nnz: Vec::new(),
        }
    }
}

/// Approximates `exp(P) e_c` to 1-norm error `eps` with the queue solver.
pub fn gexpmq(g: &CscGraph, c: usize, eps: f64, opts: &SolveOptions) -> Result<SolveReport> {
    let mut solver = GexpmqSolver::new(g, c, eps, opts)?;
    solver.run()?;
    Ok(solver.finish())
}

use std::time::Instant;

use super::{
    check_inputs, effective_matvecs, relax_step, Algorithm, Relaxation, ResidualHeapState,
    ResidualKey, SolveOptions, SolveReport,
};
use crate::error::{Error, Result};
use crate::graph::CscGraph;
use crate::sparse::SparseVector;
use crate::taylor::TaylorParams;

/// Gauss-Southwell on the Taylor block system: always relax the
/// largest-magnitude residual entry.
///
/// Drive it with [`step`](Self::step) to observe each relaxation, or call
/// [`gexpm`] to run to completion.
pub struct GexpmSolver<'g> {
    g: &'g CscGraph,
    params: TaylorParams,
    state: ResidualHeapState,
    x: SparseVector,
    steps: usize,
    edge_touches: usize,
    cap: usize,
    budget: Option<usize>,
    started: Instant,
}

impl<'g> GexpmSolver<'g> {
    pub fn new(g: &'g CscGraph, c: usize, eps: f64, opts: &SolveOptions) -> Result<Self> {
        check_inputs(g, c, eps)?;
        let params = TaylorParams::for_tolerance(eps)?;
        let mut state = ResidualHeapState::default();
        state.heap.add(ResidualKey { block: 0, node: c }, 1.0);
        state.tracker = params.psi[0];
        Ok(Self {
            g,
            params,
            state,
            x: SparseVector::new(),
            steps: 0,
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

    pub fn residual(&self) -> &ResidualHeapState {
        &self.state
    }

    pub fn x(&self) -> &SparseVector {
        &self.x
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn edge_touches(&self) -> usize {
        self.edge_touches
    }

    /// True once the weighted residual certificate is met.
    pub fn is_converged(&self) -> bool {
        self.state.tracker <= self.params.residual_tol() || self.state.heap.is_empty()
    }

    /// Performs one relaxation, or returns `None` once converged or out of
    /// step budget.
    pub fn step(&mut self) -> Result<Option<Relaxation>> {
        if self.is_converged() || self.budget.is_some_and(|b| self.steps >= b) {
            return Ok(None);
        }
        if self.steps >= self.cap {
            return Err(Error::IterationCap { cap: self.cap });
        }
        let top = self
            .state
            .heap
            .pop()
            .ok_or_else(|| Error::Internal("empty heap with positive tracker".into()))?;
        let relax = relax_step(
            self.g,
            &self.params.psi,
            &mut self.state,
            &mut self.x,
            top.key,
            top.value,
            false,
        );
        self.state.tracker += relax.tracker_delta;
        self.steps += 1;
        self.edge_touches += relax.edges_touched;
        Ok(Some(relax))
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
            algorithm: Algorithm::Gexpm,
            x,
            final_tracker: self.state.tracker,
            degree: self.params.degree,
            steps: self.steps,
            discarded: 0,
            skipped_mass: 0.0,
            edge_touches: self.edge_touches,
            effective_matvecs: effective_matvecs(self.edge_touches, self.g),
            wallclock: self.started.elapsed().as_secs_f64(),
            converged,
            product_nnz: Vec::new(),
        }
    }
}

/// Approximates `exp(P) e_c` to 1-norm error `eps` by Gauss-Southwell.
pub fn gexpm(g: &CscGraph, c: usize, eps: f64, opts: &SolveOptions) -> Result<SolveReport> {
    let mut solver = GexpmSolver::new(g, c, eps, opts)?;
    solver.run()?;
    Ok(solver.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::CscGraph;

    fn stochastic(n: usize, edges: &[(usize, usize)]) -> CscGraph {
        CscGraph::from_edges(n, edges.iter().copied())
            .unwrap()
            .normalize_to_stochastic()
            .unwrap()
    }

    #[test]
    fn self_loop_gives_e() {
        let g = stochastic(1, &[(0, 0)]);
        let report = gexpm(&g, 0, 1e-8, &SolveOptions::default()).unwrap();
        assert!((report.x.get(0) - std::f64::consts::E).abs() < 1e-8);
        assert!(report.converged);
    }

    #[test]
    fn two_cycle_hyperbolic() {
        let g = stochastic(2, &[(0, 1), (1, 0)]);
        let report = gexpm(&g, 0, 1e-6, &SolveOptions::default()).unwrap();
        let err = (report.x.get(0) - 1f64.cosh()).abs() + (report.x.get(1) - 1f64.sinh()).abs();
        assert!(err <= 1e-6, "err={err}");
    }

    #[test]
    fn popped_entry_is_global_max() {
        let g = stochastic(
            6,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (1, 3),
                (2, 0),
                (3, 4),
                (3, 5),
                (4, 0),
                (5, 1),
                (5, 3),
            ],
        );
        let mut solver = GexpmSolver::new(&g, 0, 1e-6, &SolveOptions::default()).unwrap();
        loop {
            let scan_max = solver
                .residual()
                .heap
                .entries()
                .iter()
                .map(|e| e.value.abs())
                .fold(0.0, f64::max);
            solver.residual().heap.check_invariants().unwrap();
            match solver.step().unwrap() {
                Some(r) => assert_eq!(r.value.abs(), scan_max),
                None => break,
            }
        }
    }

    #[test]
    fn step_budget_stops_early() {
        let g = stochastic(2, &[(0, 1), (1, 0)]);
        let opts = SolveOptions {
            step_budget: Some(3),
            ..Default::default()
        };
        let report = gexpm(&g, 0, 1e-6, &opts).unwrap();
        assert_eq!(report.steps, 3);
        assert!(!report.converged);
    }

    #[test]
    fn cap_is_an_error() {
        let g = stochastic(2, &[(0, 1), (1, 0)]);
        let opts = SolveOptions {
            relaxation_cap: Some(2),
            ..Default::default()
        };
        assert!(matches!(
            gexpm(&g, 0, 1e-6, &opts),
            Err(Error::IterationCap { cap: 2 })
        ));
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = stochastic(2, &[(0, 1), (1, 0)]);
        let opts = SolveOptions::default();
        assert!(matches!(
            gexpm(&g, 0, 0.0, &opts),
            Err(Error::InvalidTolerance(_))
        ));
        assert!(matches!(
            gexpm(&g, 0, 1.5, &opts),
            Err(Error::InvalidTolerance(_))
        ));
        assert!(matches!(
            gexpm(&g, 5, 1e-3, &opts),
            Err(Error::NodeOutOfRange { .. })
        ));
        let raw = CscGraph::from_edges(2, [(0, 1), (0, 0), (1, 0)]).unwrap();
        assert!(matches!(
            gexpm(&raw, 0, 1e-3, &opts),
            Err(Error::NotStochastic { .. })
        ));
    }
}

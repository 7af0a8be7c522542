//! Local estimators for a single column of the matrix exponential
//! `exp(P) e_c`, where `P = G D^{-1}` is the column-stochastic transition
//! matrix of a graph.
//!
//! Three solvers live in [`solvers`]: a heap-driven Gauss-Southwell method
//! ([`solvers::gexpm`]) and a thresholded queue method ([`solvers::gexpmq`]),
//! both with a 1-norm error certificate, and a Horner evaluation with
//! truncated matrix-vector products ([`solvers::expmimv`]). [`oracle`] holds
//! dense references, [`eval`] the accuracy metrics, [`gen`] synthetic graphs.
//!
//! ```
//! use expgraph::graph::CscGraph;
//! use expgraph::solvers::{gexpm, SolveOptions};
//!
//! let p = CscGraph::from_edges(2, [(0, 1), (1, 0)])?.normalize_to_stochastic()?;
//! let report = gexpm(&p, 0, 1e-6, &SolveOptions::default())?;
//! assert!((report.x.get(0) - 1f64.cosh()).abs() < 1e-6);
//! # Ok::<(), expgraph::error::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod eval;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod solvers;
pub mod sparse;
pub mod taylor;

pub use error::{Error, Result};
pub use graph::CscGraph;
pub use sparse::SparseVector;

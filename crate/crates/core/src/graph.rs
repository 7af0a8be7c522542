//! Compressed sparse-column storage for directed graphs and their
//! column-stochastic transition matrices.
//!
//! Column `i` holds the out-links of node `i`: an edge `src -> dst` is stored
//! as row `dst` of column `src`. After [`CscGraph::normalize_to_stochastic`]
//! the stored values are `P = G D^{-1}`, so column `i` is `P e_i`.

use crate::error::{Error, Result};
use crate::sparse::SparseVector;

/// Tolerance for column sums of a normalized matrix.
pub const COLUMN_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct CscGraph {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<u32>,
    val: Vec<f64>,
    out_degree: Vec<usize>,
    /// Largest absolute column sum, cached at construction.
    max_col_sum: f64,
    /// Original node labels when ingestion relabeled ids.
    labels: Option<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub d_max: usize,
    pub d_min: usize,
    pub edge_density: f64,
}

impl CscGraph {
    /// Unit-weight graph from directed `(src, dst)` pairs. Duplicate arcs
    /// collapse to one edge; self-loops are ordinary edges.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        check_node_count(n)?;
        let mut columns: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (src, dst) in edges {
            for node in [src, dst] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            columns[src].push(dst as u32);
        }
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::new();
        col_ptr.push(0);
        for mut col in columns {
            col.sort_unstable();
            col.dedup();
            row_idx.extend_from_slice(&col);
            col_ptr.push(row_idx.len());
        }
        let val = vec![1.0; row_idx.len()];
        Self::from_csc_parts(n, col_ptr, row_idx, val)
    }

    /// Unit-weight graph from undirected pairs; each pair becomes both arcs.
    pub fn from_undirected_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let arcs = edges.into_iter().flat_map(|(a, b)| [(a, b), (b, a)]);
        Self::from_edges(n, arcs)
    }

    /// Builds from raw CSC arrays, validating structure. Rows within a column
    /// must be strictly increasing.
    pub fn from_csc_parts(
        n: usize,
        col_ptr: Vec<usize>,
        row_idx: Vec<u32>,
        val: Vec<f64>,
    ) -> Result<Self> {
        check_node_count(n)?;
        if col_ptr.len() != n + 1 {
            return Err(Error::InvalidParameter(format!(
                "col_ptr has length {}, expected {}",
                col_ptr.len(),
                n + 1
            )));
        }
        if col_ptr[0] != 0 || col_ptr[n] != row_idx.len() || row_idx.len() != val.len() {
            return Err(Error::InvalidParameter(
                "col_ptr must start at 0 and end at nnz = len(row_idx) = len(val)".into(),
            ));
        }
        let mut out_degree = Vec::with_capacity(n);
        let mut max_col_sum: f64 = 0.0;
        for j in 0..n {
            let (lo, hi) = (col_ptr[j], col_ptr[j + 1]);
            if hi < lo {
                return Err(Error::InvalidParameter(format!(
                    "col_ptr decreases at column {j}"
                )));
            }
            let rows = &row_idx[lo..hi];
            if let Some(&r) = rows.iter().find(|&&r| r as usize >= n) {
                return Err(Error::NodeOutOfRange {
                    node: r as usize,
                    n,
                });
            }
            if rows.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "rows of column {j} are not strictly increasing"
                )));
            }
            let vals = &val[lo..hi];
            if let Some(v) = vals.iter().find(|v| !v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "non-finite value {v} in column {j}"
                )));
            }
            max_col_sum = max_col_sum.max(vals.iter().map(|v| v.abs()).sum());
            out_degree.push(hi - lo);
        }
        Ok(Self {
            n,
            col_ptr,
            row_idx,
            val,
            out_degree,
            max_col_sum,
            labels: None,
        })
    }

    /// Attaches the original node labels (index `i` maps to `labels[i]`).
    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// `P = G D^{-1}`: every column scaled to sum to one. The sparsity pattern
    /// is unchanged.
    pub fn normalize_to_stochastic(&self) -> Result<Self> {
        let mut val = self.val.clone();
        for j in 0..self.n {
            let (lo, hi) = (self.col_ptr[j], self.col_ptr[j + 1]);
            if lo == hi {
                return Err(Error::ZeroOutDegree { node: j });
            }
            let total: f64 = self.val[lo..hi].iter().sum();
            if total.is_nan() || total <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "column {j} has non-positive weight sum {total}"
                )));
            }
            for v in &mut val[lo..hi] {
                *v /= total;
            }
        }
        let mut out =
            Self::from_csc_parts(self.n, self.col_ptr.clone(), self.row_idx.clone(), val)?;
        out.labels = self.labels.clone();
        Ok(out)
    }

    /// Fails unless every column has absolute sum at most one (up to
    /// [`COLUMN_SUM_TOL`]). Reads the cached maximum, so it is O(1) when the
    /// check passes.
    pub fn check_substochastic(&self) -> Result<()> {
        if self.max_col_sum <= 1.0 + COLUMN_SUM_TOL {
            return Ok(());
        }
        let column = (0..self.n)
            .find(|&j| self.column_abs_sum(j) > 1.0 + COLUMN_SUM_TOL)
            .unwrap_or(0);
        Err(Error::NotStochastic {
            column,
            sum: self.column_abs_sum(column),
        })
    }

    fn column_abs_sum(&self, j: usize) -> f64 {
        self.col_values(j).iter().map(|v| v.abs()).sum()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    pub fn col_ptr(&self) -> &[usize] {
        &self.col_ptr
    }

    pub fn row_idx(&self) -> &[u32] {
        &self.row_idx
    }

    pub fn values(&self) -> &[f64] {
        &self.val
    }

    pub fn out_degree(&self) -> &[usize] {
        &self.out_degree
    }

    pub fn max_column_sum(&self) -> f64 {
        self.max_col_sum
    }

    #[inline]
    pub fn col_rows(&self, j: usize) -> &[u32] {
        &self.row_idx[self.col_ptr[j]..self.col_ptr[j + 1]]
    }

    #[inline]
    pub fn col_values(&self, j: usize) -> &[f64] {
        &self.val[self.col_ptr[j]..self.col_ptr[j + 1]]
    }

    /// Nonzeros of `P e_i` in row order.
    pub fn column(&self, i: usize) -> Result<Vec<(usize, f64)>> {
        self.check_node(i)?;
        Ok(self
            .col_rows(i)
            .iter()
            .zip(self.col_values(i))
            .map(|(&r, &v)| (r as usize, v))
            .collect())
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange { node: i, n: self.n })
        }
    }

    pub fn degree_stats(&self) -> DegreeStats {
        let d_max = self.out_degree.iter().copied().max().unwrap_or(0);
        let d_min = self.out_degree.iter().copied().min().unwrap_or(0);
        DegreeStats {
            d_max,
            d_min,
            edge_density: if self.n == 0 {
                0.0
            } else {
                self.nnz() as f64 / self.n as f64
            },
        }
    }

    /// Dense product `y = A x` with the stored values.
    pub fn mul_dense(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "dimension mismatch");
        let mut y = vec![0.0; self.n];
        for (j, &xj) in x.iter().enumerate() {
            if xj == 0.0 {
                continue;
            }
            for (&r, &v) in self.col_rows(j).iter().zip(self.col_values(j)) {
                y[r as usize] += v * xj;
            }
        }
        y
    }
}

fn check_node_count(n: usize) -> Result<()> {
    if n > u32::MAX as usize {
        return Err(Error::InvalidParameter(format!(
            "graphs are limited to {} nodes",
            u32::MAX
        )));
    }
    Ok(())
}

/// Turns a column of `exp(P)` into the matching column of `exp(-L)`, with
/// `L = I - D^{-1/2} G D^{-1/2}` the normalized Laplacian:
/// `exp(-L) e_c = e^{-1} D^{-1/2} exp(P) D^{1/2} e_c`, so entry `i` is
/// `e^{-1} sqrt(d_c / d_i) x_i`.
pub fn laplacian_column_from_exp_column(
    x: &SparseVector,
    degrees: &[usize],
    c: usize,
) -> Result<SparseVector> {
    let degree = |i: usize| -> Result<f64> {
        match degrees.get(i) {
            Some(0) => Err(Error::ZeroOutDegree { node: i }),
            Some(&d) => Ok(d as f64),
            None => Err(Error::NodeOutOfRange {
                node: i,
                n: degrees.len(),
            }),
        }
    };
    let scale = (-1.0f64).exp() * degree(c)?.sqrt();
    let mut out = SparseVector::with_capacity(x.nnz());
    for (i, v) in x.iter() {
        out.set(i, scale * v / degree(i)?.sqrt());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_cycle() -> CscGraph {
        CscGraph::from_edges(2, [(0, 1), (1, 0)]).unwrap()
    }

    fn star() -> CscGraph {
        CscGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 0), (2, 0), (3, 0)]).unwrap()
    }

    #[test]
    fn normalize_two_cycle() {
        let p = two_cycle().normalize_to_stochastic().unwrap();
        assert_eq!(p.values(), &[1.0, 1.0]);
        assert_eq!(p.max_column_sum(), 1.0);
    }

    #[test]
    fn normalize_star_uniform_column() {
        let p = star().normalize_to_stochastic().unwrap();
        assert_eq!(p.col_values(0), &[1.0 / 3.0; 3]);
        assert_eq!(p.col_rows(0), &[1, 2, 3]);
    }

    #[test]
    fn normalize_rejects_isolated_node() {
        let g = CscGraph::from_edges(3, [(0, 1), (1, 0)]).unwrap();
        match g.normalize_to_stochastic() {
            Err(Error::ZeroOutDegree { node }) => assert_eq!(node, 2),
            other => panic!("expected zero out-degree error, got {other:?}"),
        }
    }

    #[test]
    fn column_examples() {
        let p = two_cycle().normalize_to_stochastic().unwrap();
        assert_eq!(p.column(0).unwrap(), vec![(1, 1.0)]);

        let p = star().normalize_to_stochastic().unwrap();
        let third = 1.0 / 3.0;
        assert_eq!(
            p.column(0).unwrap(),
            vec![(1, third), (2, third), (3, third)]
        );

        let p = CscGraph::from_edges(1, [(0, 0)])
            .unwrap()
            .normalize_to_stochastic()
            .unwrap();
        assert_eq!(p.column(0).unwrap(), vec![(0, 1.0)]);

        assert!(matches!(
            p.column(1),
            Err(Error::NodeOutOfRange { node: 1, n: 1 })
        ));
    }

    #[test]
    fn duplicates_collapse_and_self_loops_stay() {
        let g = CscGraph::from_edges(2, [(0, 1), (0, 1), (0, 0), (1, 0)]).unwrap();
        assert_eq!(g.col_rows(0), &[0, 1]);
        assert_eq!(g.out_degree(), &[2, 1]);
    }

    #[test]
    fn out_of_range_edge_rejected() {
        assert!(matches!(
            CscGraph::from_edges(2, [(0, 2)]),
            Err(Error::NodeOutOfRange { node: 2, n: 2 })
        ));
    }

    #[test]
    fn substochastic_check_names_offending_column() {
        let g = CscGraph::from_edges(2, [(0, 1), (1, 0), (1, 1)]).unwrap();
        match g.check_substochastic() {
            Err(Error::NotStochastic { column, sum }) => {
                assert_eq!(column, 1);
                assert_eq!(sum, 2.0);
            }
            other => panic!("{other:?}"),
        }
        assert!(g
            .normalize_to_stochastic()
            .unwrap()
            .check_substochastic()
            .is_ok());
    }

    #[test]
    fn laplacian_identity_graph() {
        let x = SparseVector::unit(0);
        let out = laplacian_column_from_exp_column(&x, &[1], 0).unwrap();
        assert!((out.get(0) - 0.36787944117144233).abs() < 1e-15);
    }

    #[test]
    fn laplacian_two_cycle() {
        // exp(-(I - G)) e_0 = e^{-1} [cosh 1, sinh 1] for the 2-cycle.
        let x: SparseVector = [(0, 1f64.cosh()), (1, 1f64.sinh())].into_iter().collect();
        let out = laplacian_column_from_exp_column(&x, &[1, 1], 0).unwrap();
        let e_inv = (-1f64).exp();
        assert!((out.get(0) - e_inv * 1.5430806348152437).abs() < 1e-15);
        assert!((out.get(1) - e_inv * 1.1752011936438014).abs() < 1e-15);
    }

    #[test]
    fn laplacian_degree_scaling_invariant() {
        let x: SparseVector = [(0, 0.7), (1, 0.2), (2, 0.1)].into_iter().collect();
        let a = laplacian_column_from_exp_column(&x, &[3, 1, 2], 1).unwrap();
        let b = laplacian_column_from_exp_column(&x, &[6, 2, 4], 1).unwrap();
        for i in 0..3 {
            assert!((a.get(i) - b.get(i)).abs() < 1e-15);
        }
    }

    #[test]
    fn laplacian_rejects_zero_degree() {
        let x: SparseVector = [(1, 0.5)].into_iter().collect();
        assert!(laplacian_column_from_exp_column(&x, &[1, 0], 0).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = CscGraph> {
        (1usize..30).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..120).prop_map(move |mut edges| {
                // every node gets at least one out-edge
                edges.extend((0..n).map(|i| (i, (i + 1) % n)));
                CscGraph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn structural_invariants(g in arb_graph()) {
            let n = g.n();
            prop_assert_eq!(g.col_ptr()[0], 0);
            prop_assert_eq!(g.col_ptr()[n], g.nnz());
            prop_assert!(g.col_ptr().windows(2).all(|w| w[0] <= w[1]));
            prop_assert!(g.row_idx().iter().all(|&r| (r as usize) < n));
            for i in 0..n {
                prop_assert_eq!(g.out_degree()[i], g.col_ptr()[i + 1] - g.col_ptr()[i]);
                prop_assert_eq!(g.column(i).unwrap().len(), g.out_degree()[i]);
            }
            let p = g.normalize_to_stochastic().unwrap();
            for i in 0..n {
                let s: f64 = p.col_values(i).iter().sum();
                prop_assert!((s - 1.0).abs() <= COLUMN_SUM_TOL);
            }
        }

        #[test]
        fn matvec_conserves_mass(
            g in arb_graph(),
            seed in proptest::collection::vec(0.0f64..1.0, 30),
        ) {
            let p = g.normalize_to_stochastic().unwrap();
            let v: Vec<f64> = seed[..p.n()].to_vec();
            let y = p.mul_dense(&v);
            let before: f64 = v.iter().sum();
            let after: f64 = y.iter().sum();
            prop_assert!((before - after).abs() <= 1e-12);
        }
    }
}

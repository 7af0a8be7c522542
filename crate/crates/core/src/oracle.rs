//! Slow reference computations with dense vectors.

use crate::error::{Error, Result};
use crate::graph::CscGraph;
use crate::sparse::SparseVector;
use crate::taylor::select_degree_exact;

/// Largest graph the dense references accept.
pub const ORACLE_NODE_CAP: usize = 1_000_000;

/// Largest graph for [`dense_exp_neg_laplacian_column`], which forms an
/// `n x n` matrix.
pub const DENSE_MATRIX_CAP: usize = 4_000;

/// Tolerance whose exact Taylor degree is used as ground truth.
pub const ORACLE_EPS: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq)]
pub struct DenseVector {
    pub values: Vec<f64>,
}

impl DenseVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn one_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).sum()
    }

    pub fn to_sparse(&self) -> SparseVector {
        SparseVector::from_dense(&self.values)
    }

    pub fn distance(&self, other: &DenseVector) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .sum()
    }
}

/// Taylor degree the oracle uses by default (17).
pub fn default_oracle_degree() -> usize {
    select_degree_exact(ORACLE_EPS).expect("constant tolerance is valid")
}

fn check_cap(g: &CscGraph, c: usize) -> Result<()> {
    if g.n() > ORACLE_NODE_CAP {
        return Err(Error::OracleCap {
            n: g.n(),
            cap: ORACLE_NODE_CAP,
        });
    }
    g.check_node(c)
}

/// `T_N(A) e_c = sum_j v_j` with `v_0 = e_c`, `v_{j+1} = A v_j / (j+1)`.
pub fn dense_taylor_oracle(g: &CscGraph, c: usize, degree: usize) -> Result<DenseVector> {
    check_cap(g, c)?;
    let mut term = vec![0.0; g.n()];
    term[c] = 1.0;
    let mut sum = term.clone();
    for j in 0..degree {
        term = g.mul_dense(&term);
        let inv = 1.0 / (j + 1) as f64;
        for (s, t) in sum.iter_mut().zip(term.iter_mut()) {
            *t *= inv;
            *s += *t;
        }
    }
    Ok(DenseVector { values: sum })
}

/// `T_N(A) e_c` by Horner's rule, `x <- A (x / (N - k)) + e_c`, untruncated.
pub fn horner_full(g: &CscGraph, c: usize, degree: usize) -> Result<DenseVector> {
    check_cap(g, c)?;
    let mut x = vec![0.0; g.n()];
    x[c] = 1.0;
    for k in 0..degree {
        let scale = 1.0 / (degree - k) as f64;
        x.iter_mut().for_each(|v| *v *= scale);
        x = g.mul_dense(&x);
        x[c] += 1.0;
    }
    Ok(DenseVector { values: x })
}

/// Column `c` of `exp(-L)`, `L = I - D^{-1/2} G D^{-1/2}`, from an explicit
/// dense matrix and a Taylor series run until terms vanish. `g` carries the
/// unit-weight adjacency; degrees are out-degrees.
pub fn dense_exp_neg_laplacian_column(g: &CscGraph, c: usize) -> Result<DenseVector> {
    let n = g.n();
    if n > DENSE_MATRIX_CAP {
        return Err(Error::OracleCap {
            n,
            cap: DENSE_MATRIX_CAP,
        });
    }
    g.check_node(c)?;
    let deg = g.out_degree();
    if let Some(node) = deg.iter().position(|&d| d == 0) {
        return Err(Error::ZeroOutDegree { node });
    }
    // row-major dense -L
    let mut a = vec![0.0; n * n];
    for i in 0..n {
        a[i * n + i] -= 1.0;
    }
    for j in 0..n {
        for (&r, &w) in g.col_rows(j).iter().zip(g.col_values(j)) {
            let i = r as usize;
            a[i * n + j] += w / ((deg[i] * deg[j]) as f64).sqrt();
        }
    }
    let mut term = vec![0.0; n];
    term[c] = 1.0;
    let mut sum = term.clone();
    for k in 1..200 {
        let mut next = vec![0.0; n];
        for (i, out) in next.iter_mut().enumerate() {
            let row = &a[i * n..(i + 1) * n];
            *out = row.iter().zip(&term).map(|(x, y)| x * y).sum::<f64>() / k as f64;
        }
        term = next;
        let size: f64 = term.iter().map(|v| v.abs()).sum();
        sum.iter_mut().zip(&term).for_each(|(s, t)| *s += t);
        if size < 1e-18 {
            break;
        }
    }
    Ok(DenseVector { values: sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_out_degree;

    fn stochastic(n: usize, edges: &[(usize, usize)]) -> CscGraph {
        CscGraph::from_edges(n, edges.iter().copied())
            .unwrap()
            .normalize_to_stochastic()
            .unwrap()
    }

    #[test]
    fn default_degree_is_17() {
        assert_eq!(default_oracle_degree(), 17);
    }

    #[test]
    fn self_loop_partial_sum_of_e() {
        let g = stochastic(1, &[(0, 0)]);
        let x = dense_taylor_oracle(&g, 0, 17).unwrap();
        assert!((x.values[0] - std::f64::consts::E).abs() < 1e-15);
    }

    #[test]
    fn two_cycle_hyperbolic() {
        let g = stochastic(2, &[(0, 1), (1, 0)]);
        let x = dense_taylor_oracle(&g, 0, 17).unwrap();
        assert!((x.values[0] - 1.5430806348).abs() < 1e-10);
        assert!((x.values[1] - 1.1752011936).abs() < 1e-10);
    }

    #[test]
    fn column_sum_equals_partial_sum_of_e() {
        let g = random_out_degree(30, 1, 5, 11)
            .unwrap()
            .normalize_to_stochastic()
            .unwrap();
        for degree in [1, 4, 9, 17] {
            let x = dense_taylor_oracle(&g, 3, degree).unwrap();
            let total: f64 = x.values.iter().sum();
            let expect: f64 = crate::taylor::psi_weights(degree)[0];
            assert!((total - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn horner_single_step() {
        let g = stochastic(3, &[(0, 1), (0, 2), (1, 0), (2, 2)]);
        let x = horner_full(&g, 0, 1).unwrap();
        assert_eq!(x.values, vec![1.0, 0.5, 0.5]);
    }

    #[test]
    fn horner_matches_power_series() {
        for seed in 0..30u64 {
            let n = 6 + (seed as usize * 7) % 95;
            let g = random_out_degree(n, 1, 6, seed)
                .unwrap()
                .normalize_to_stochastic()
                .unwrap();
            let c = seed as usize % n;
            let a = dense_taylor_oracle(&g, c, 17).unwrap();
            let b = horner_full(&g, c, 17).unwrap();
            assert!(a.distance(&b) <= 1e-12);
        }
    }

    #[test]
    fn truncation_tail_bound() {
        // ||T_{N+5} - T_N||_1 <= 1/(N! N) on stochastic P
        let g = random_out_degree(40, 1, 4, 5)
            .unwrap()
            .normalize_to_stochastic()
            .unwrap();
        for degree in 3..15 {
            let a = dense_taylor_oracle(&g, 0, degree).unwrap();
            let b = dense_taylor_oracle(&g, 0, degree + 5).unwrap();
            let fact: f64 = (1..=degree).map(|k| k as f64).product();
            assert!(a.distance(&b) <= 1.0 / (fact * degree as f64));
        }
    }

    #[test]
    fn laplacian_reference_two_cycle() {
        let g = CscGraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        let x = dense_exp_neg_laplacian_column(&g, 0).unwrap();
        let e_inv = (-1f64).exp();
        assert!((x.values[0] - e_inv * 1f64.cosh()).abs() < 1e-14);
        assert!((x.values[1] - e_inv * 1f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn caps_enforced() {
        let g = CscGraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert!(dense_taylor_oracle(&g, 2, 3).is_err());
        let big = crate::gen::ring(DENSE_MATRIX_CAP + 1).unwrap();
        assert!(matches!(
            dense_exp_neg_laplacian_column(&big, 0),
            Err(Error::OracleCap { .. })
        ));
    }
}

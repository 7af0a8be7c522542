use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::time::Instant;

use super::{effective_matvecs, Algorithm, SolveReport};
use crate::error::{Error, Result};
use crate::graph::CscGraph;
use crate::sparse::SparseVector;

/// Selection rank: larger magnitude first, then smaller node.
#[derive(Debug, Clone, Copy)]
struct Rank {
    magnitude: f64,
    node: usize,
    value: f64,
}

impl PartialEq for Rank {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Rank {}

impl PartialOrd for Rank {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rank {
    fn cmp(&self, other: &Self) -> Ordering {
        self.magnitude
            .total_cmp(&other.magnitude)
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// `[v]_z`: keeps the `z` largest-magnitude entries of `v`, streaming them
/// through a size-`z` min-heap. Equal magnitudes keep the smaller node.
/// `z = 0` yields an empty vector.
pub fn top_z_filter(v: &SparseVector, z: usize) -> SparseVector {
    if z >= v.nnz() {
        return v.clone();
    }
    let mut heap: BinaryHeap<Reverse<Rank>> = BinaryHeap::with_capacity(z + 1);
    for (node, value) in v.iter() {
        let rank = Rank {
            magnitude: value.abs(),
            node,
            value,
        };
        if heap.len() < z {
            heap.push(Reverse(rank));
        } else if let Some(Reverse(worst)) = heap.peek() {
            if rank > *worst {
                heap.pop();
                heap.push(Reverse(rank));
            }
        }
    }
    heap.into_iter()
        .map(|Reverse(r)| (r.node, r.value))
        .collect()
}

/// Horner evaluation of `T_N(A) e_c` with `z`-incomplete products:
/// `x <- A([x]_z / (N - k)) + e_c` for `k = 0..N`.
///
/// Work is bounded by `N * d_max * z` edge reads; there is no accuracy
/// guarantee. Works for any matrix, stochastic or not.
pub fn expmimv(g: &CscGraph, c: usize, degree: usize, z: usize) -> Result<SolveReport> {
    g.check_node(c)?;
    if degree == 0 {
        return Err(Error::InvalidParameter("Taylor degree must be >= 1".into()));
    }
    if z == 0 {
        return Err(Error::InvalidParameter("z must be >= 1".into()));
    }
    let started = Instant::now();
    let mut x = SparseVector::unit(c);
    let mut edge_touches = 0;
    let mut product_nnz = Vec::with_capacity(degree);
    for k in 0..degree {
        let kept = top_z_filter(&x, z).sorted_by_node();
        let scale = 1.0 / (degree - k) as f64;
        let mut next = SparseVector::with_capacity(kept.len() * 4);
        for (node, value) in kept {
            let coeff = value * scale;
            let rows = g.col_rows(node);
            edge_touches += rows.len();
            for (&r, &p) in rows.iter().zip(g.col_values(node)) {
                next.add(r as usize, p * coeff);
            }
        }
        product_nnz.push(next.nnz());
        next.add(c, 1.0);
        x = next;
    }
    x.compact();
    Ok(SolveReport {
        algorithm: Algorithm::Expmimv,
        x,
        final_tracker: 0.0,
        degree,
        steps: degree,
        discarded: 0,
        skipped_mass: 0.0,
        edge_touches,
        effective_matvecs: effective_matvecs(edge_touches, g),
        wallclock: started.elapsed().as_secs_f64(),
        converged: true,
        product_nnz,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(pairs: &[(usize, f64)]) -> SparseVector {
        pairs.iter().copied().collect()
    }

    #[test]
    fn keeps_largest() {
        let out = top_z_filter(&sv(&[(0, 3.0), (1, 1.0), (2, 2.0)]), 2);
        assert_eq!(out.sorted_by_node(), vec![(0, 3.0), (2, 2.0)]);
    }

    #[test]
    fn ties_keep_smaller_node() {
        let out = top_z_filter(&sv(&[(0, 1.0), (1, 1.0), (2, 1.0)]), 2);
        assert_eq!(out.sorted_by_node(), vec![(0, 1.0), (1, 1.0)]);
    }

    #[test]
    fn magnitude_not_sign() {
        let out = top_z_filter(&sv(&[(0, -5.0), (1, 1.0), (2, 2.0)]), 1);
        assert_eq!(out.sorted_by_node(), vec![(0, -5.0)]);
    }

    #[test]
    fn large_z_is_identity() {
        let v = sv(&[(4, 1.0), (7, 0.5)]);
        assert_eq!(top_z_filter(&v, 2), v);
        assert_eq!(top_z_filter(&v, 10), v);
        assert!(top_z_filter(&v, 0).is_empty());
    }

    #[test]
    fn two_cycle_untruncated() {
        let g = CscGraph::from_edges(2, [(0, 1), (1, 0)])
            .unwrap()
            .normalize_to_stochastic()
            .unwrap();
        let report = expmimv(&g, 0, 17, 2).unwrap();
        assert!((report.x.get(0) - 1f64.cosh()).abs() < 1e-10);
        assert!((report.x.get(1) - 1f64.sinh()).abs() < 1e-10);
        // the first product reads one column, later ones two
        assert_eq!(report.edge_touches, 1 + 16 * 2);
    }

    #[test]
    fn rejects_zero_parameters() {
        let g = CscGraph::from_edges(1, [(0, 0)]).unwrap();
        assert!(expmimv(&g, 0, 0, 3).is_err());
        assert!(expmimv(&g, 0, 3, 0).is_err());
        assert!(expmimv(&g, 1, 3, 3).is_err());
    }

    proptest! {
        #[test]
        fn selection_properties(values in proptest::collection::vec(-10.0f64..10.0, 0..60), z in 1usize..70) {
            let v: SparseVector = values.iter().copied().enumerate().collect();
            let out = top_z_filter(&v, z);
            prop_assert_eq!(out.nnz(), z.min(v.nnz()));
            prop_assert!(out.one_norm() <= v.one_norm() + 1e-12);
            // every kept magnitude dominates every dropped one
            let min_kept = out.iter().map(|(_, x)| x.abs()).fold(f64::INFINITY, f64::min);
            for (i, x) in v.iter() {
                if !out.contains(i) {
                    prop_assert!(x.abs() <= min_kept);
                } else {
                    prop_assert_eq!(out.get(i), x);
                }
            }
        }
    }
}

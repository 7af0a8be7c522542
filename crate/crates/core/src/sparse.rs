//! Hash-map backed sparse vectors indexed by node.

use std::cmp::Ordering;

use rustc_hash::FxHashMap;

/// Sparse real vector over node indices.
///
/// Iteration order is deterministic for a fixed sequence of insertions (the
/// map uses a fixed hasher), which keeps repeated solves bit-identical.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SparseVector {
    entries: FxHashMap<usize, f64>,
}

impl SparseVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(cap: usize) -> Self {
        Self {
            entries: FxHashMap::with_capacity_and_hasher(cap, Default::default()),
        }
    }

    /// Unit vector with a single 1 at `node`.
    pub fn unit(node: usize) -> Self {
        let mut v = Self::new();
        v.set(node, 1.0);
        v
    }

    pub fn get(&self, node: usize) -> f64 {
        self.entries.get(&node).copied().unwrap_or(0.0)
    }

    pub fn set(&mut self, node: usize, value: f64) {
        self.entries.insert(node, value);
    }

    /// Adds `delta` to entry `node`, returning `(old, new)`.
    pub fn add(&mut self, node: usize, delta: f64) -> (f64, f64) {
        let slot = self.entries.entry(node).or_insert(0.0);
        let old = *slot;
        *slot += delta;
        (old, *slot)
    }

    pub fn remove(&mut self, node: usize) -> Option<f64> {
        self.entries.remove(&node)
    }

    pub fn contains(&self, node: usize) -> bool {
        self.entries.contains_key(&node)
    }

    /// Number of stored entries (including explicit zeros before [`compact`](Self::compact)).
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn one_norm(&self) -> f64 {
        self.entries.values().map(|v| v.abs()).sum()
    }

    /// Drops stored zeros.
    pub fn compact(&mut self) {
        self.entries.retain(|_, v| *v != 0.0);
    }

    /// Entries sorted by descending value, ties by ascending node.
    pub fn sorted_desc(&self) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64)> = self.iter().collect();
        out.sort_by(|a, b| desc_then_index(*a, *b));
        out
    }

    /// Entries sorted by node index.
    pub fn sorted_by_node(&self) -> Vec<(usize, f64)> {
        let mut out: Vec<(usize, f64)> = self.iter().collect();
        out.sort_unstable_by_key(|&(i, _)| i);
        out
    }

    pub fn to_dense(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (i, v) in self.iter() {
            out[i] = v;
        }
        out
    }

    pub fn from_dense(values: &[f64]) -> Self {
        values
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, &v)| (i, v))
            .collect()
    }
}

impl FromIterator<(usize, f64)> for SparseVector {
    fn from_iter<I: IntoIterator<Item = (usize, f64)>>(iter: I) -> Self {
        let mut v = SparseVector::new();
        for (i, x) in iter {
            v.add(i, x);
        }
        v
    }
}

pub(crate) fn desc_then_index(a: (usize, f64), b: (usize, f64)) -> Ordering {
    b.1.total_cmp(&a.1).then(a.0.cmp(&b.0))
}

//! Addressable binary max-heap over residual entries.

use rustc_hash::FxHashMap;

use super::{ResidualKey, ResidualStore};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeapEntry {
    pub key: ResidualKey,
    pub value: f64,
}

impl HeapEntry {
    /// Larger magnitude wins; equal magnitudes go to the smaller (block, node).
    #[inline]
    fn outranks(&self, other: &HeapEntry) -> bool {
        match self.value.abs().total_cmp(&other.value.abs()) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => self.key < other.key,
        }
    }
}

/// Max-heap keyed by residual magnitude, with a locator map from key to slot
/// so an entry can be found and re-sifted when its value changes.
#[derive(Debug, Clone, Default)]
pub struct IndexedMaxHeap {
    slots: Vec<HeapEntry>,
    locator: FxHashMap<ResidualKey, usize>,
}

impl IndexedMaxHeap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn peek(&self) -> Option<&HeapEntry> {
        self.slots.first()
    }

    pub fn get(&self, key: ResidualKey) -> Option<f64> {
        self.locator.get(&key).map(|&s| self.slots[s].value)
    }

    pub fn entries(&self) -> &[HeapEntry] {
        &self.slots
    }

    /// Adds `delta` to `key` (inserting it if absent) and restores heap order.
    /// Returns the old and new values.
    pub fn add(&mut self, key: ResidualKey, delta: f64) -> (f64, f64) {
        match self.locator.get(&key) {
            Some(&slot) => {
                let old = self.slots[slot].value;
                let new = old + delta;
                self.slots[slot].value = new;
                if new.abs() >= old.abs() {
                    self.sift_up(slot);
                } else {
                    self.sift_down(slot);
                }
                (old, new)
            }
            None => {
                let slot = self.slots.len();
                self.slots.push(HeapEntry { key, value: delta });
                self.locator.insert(key, slot);
                self.sift_up(slot);
                (0.0, delta)
            }
        }
    }

    pub fn pop(&mut self) -> Option<HeapEntry> {
        if self.slots.is_empty() {
            return None;
        }
        let last = self.slots.len() - 1;
        self.swap(0, last);
        let top = self.slots.pop()?;
        self.locator.remove(&top.key);
        if !self.slots.is_empty() {
            self.sift_down(0);
        }
        Some(top)
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.slots.swap(a, b);
        self.locator.insert(self.slots[a].key, a);
        self.locator.insert(self.slots[b].key, b);
    }

    fn sift_up(&mut self, mut slot: usize) {
        while slot > 0 {
            let parent = (slot - 1) / 2;
            if self.slots[slot].outranks(&self.slots[parent]) {
                self.swap(slot, parent);
                slot = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut slot: usize) {
        let len = self.slots.len();
        loop {
            let left = 2 * slot + 1;
            if left >= len {
                break;
            }
            let right = left + 1;
            let mut best = left;
            if right < len && self.slots[right].outranks(&self.slots[left]) {
                best = right;
            }
            if self.slots[best].outranks(&self.slots[slot]) {
                self.swap(slot, best);
                slot = best;
            } else {
                break;
            }
        }
    }

    /// Verifies heap order and locator consistency.
    pub fn check_invariants(&self) -> Result<()> {
        if self.locator.len() != self.slots.len() {
            return Err(Error::Internal(format!(
                "locator holds {} keys for {} heap slots",
                self.locator.len(),
                self.slots.len()
            )));
        }
        for (slot, entry) in self.slots.iter().enumerate() {
            if self.locator.get(&entry.key) != Some(&slot) {
                return Err(Error::Internal(format!(
                    "locator mismatch for {:?} at slot {slot}",
                    entry.key
                )));
            }
            if slot > 0 && entry.outranks(&self.slots[(slot - 1) / 2]) {
                return Err(Error::Internal(format!(
                    "heap order violated at slot {slot}"
                )));
            }
        }
        Ok(())
    }
}

/// Residual container for `gexpm`: the heap plus the weighted tracker
/// `t = sum_j psi_j(1) ||r_j||_1`.
#[derive(Debug, Clone, Default)]
pub struct ResidualHeapState {
    pub heap: IndexedMaxHeap,
    pub tracker: f64,
}

impl ResidualHeapState {
    /// Recomputes the weighted residual sum from the stored entries.
    pub fn recompute_tracker(&self, psi: &[f64]) -> f64 {
        self.heap
            .entries()
            .iter()
            .map(|e| psi[e.key.block] * e.value.abs())
            .sum()
    }
}

impl ResidualStore for ResidualHeapState {
    fn add_residual(&mut self, key: ResidualKey, delta: f64) -> (f64, f64) {
        self.heap.add(key, delta)
    }
}

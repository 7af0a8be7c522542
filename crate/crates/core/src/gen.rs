//! Synthetic graphs: symmetric forest-fire for scaling studies, plus small
//! random and structured graphs for testing.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::graph::CscGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForestFireConfig {
    pub n_target: usize,
    pub p_burn: f64,
    pub rng_seed: u64,
}

/// Symmetric forest-fire graph with a single burning probability.
///
/// Node `v` arrives, picks a uniform ambassador among `0..v`, and burns
/// outward: every burning node ignites `Geometric(1 - p)` of its not yet
/// burned neighbors, chosen uniformly without replacement. `v` links to every
/// burned node. Edges are undirected, so the result is connected and every
/// degree is at least one.
pub fn forest_fire(config: ForestFireConfig) -> Result<CscGraph> {
    let ForestFireConfig {
        n_target: n,
        p_burn,
        rng_seed,
    } = config;
    if !(p_burn > 0.0 && p_burn < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "burning probability must lie in (0, 1), got {p_burn}"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "forest-fire needs at least 2 nodes, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let burn_count =
        Geometric::new(1.0 - p_burn).map_err(|e| Error::InvalidParameter(e.to_string()))?;

    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut burned: Vec<u32> = Vec::new();
    let mut seen: FxHashSet<u32> = FxHashSet::default();
    let mut frontier: Vec<u32> = Vec::new();
    let mut picks: Vec<u32> = Vec::new();

    for v in 1..n {
        burned.clear();
        seen.clear();
        frontier.clear();
        let ambassador = rng.random_range(0..v) as u32;
        seen.insert(ambassador);
        burned.push(ambassador);
        frontier.push(ambassador);
        let mut head = 0;
        while head < frontier.len() {
            let u = frontier[head] as usize;
            head += 1;
            let want = burn_count.sample(&mut rng) as usize;
            if want == 0 {
                continue;
            }
            sample_unseen(&adj[u], want, &seen, &mut rng, &mut picks);
            for &w in &picks {
                seen.insert(w);
                burned.push(w);
                frontier.push(w);
            }
        }
        for &w in &burned {
            adj[w as usize].push(v as u32);
            adj[v].push(w);
        }
    }
    let edges = adj
        .iter()
        .enumerate()
        .flat_map(|(src, nbrs)| nbrs.iter().map(move |&dst| (src, dst as usize)));
    CscGraph::from_edges(n, edges)
}

/// Up to `want` distinct entries of `nbrs` not in `seen`, uniformly.
fn sample_unseen(
    nbrs: &[u32],
    want: usize,
    seen: &FxHashSet<u32>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<u32>,
) {
    out.clear();
    if nbrs.len() <= 64 || want * 4 >= nbrs.len() {
        let mut open: Vec<u32> = nbrs.iter().copied().filter(|w| !seen.contains(w)).collect();
        let take = want.min(open.len());
        let (chosen, _) = open.partial_shuffle(rng, take);
        out.extend_from_slice(chosen);
        return;
    }
    // Large neighbor lists: the burned set is tiny, so rejection on a random
    // permutation prefix finds unseen neighbors quickly.
    let draw = (want + seen.len()).min(nbrs.len());
    for i in index::sample(rng, nbrs.len(), draw) {
        let w = nbrs[i];
        if !seen.contains(&w) {
            out.push(w);
            if out.len() == want {
                break;
            }
        }
    }
}

/// Undirected `d`-regular graph from the pairing model, retried until simple.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<CscGraph> {
    if d == 0 || d >= n || (n * d) % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "no simple {d}-regular graph on {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _attempt in 0..10_000 {
        stubs.shuffle(&mut rng);
        let mut pairs = FxHashSet::default();
        let simple = stubs.chunks(2).all(|p| {
            let (a, b) = (p[0].min(p[1]), p[0].max(p[1]));
            a != b && pairs.insert((a, b))
        });
        if simple {
            return CscGraph::from_undirected_edges(n, pairs);
        }
    }
    Err(Error::InvalidParameter(format!(
        "pairing model failed to produce a simple {d}-regular graph on {n} nodes"
    )))
}

/// Directed graph where node `i` links to a uniform number in
/// `[d_lo, d_hi]` of distinct random targets (self-loops allowed).
pub fn random_out_degree(n: usize, d_lo: usize, d_hi: usize, seed: u64) -> Result<CscGraph> {
    if d_lo == 0 || d_lo > d_hi || d_hi > n {
        return Err(Error::InvalidParameter(format!(
            "out-degree range [{d_lo}, {d_hi}] invalid for {n} nodes"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for src in 0..n {
        let k = rng.random_range(d_lo..=d_hi);
        for dst in index::sample(&mut rng, n, k) {
            edges.push((src, dst));
        }
    }
    CscGraph::from_edges(n, edges)
}

/// Undirected cycle on `n` nodes (a single self-loop when `n = 1`).
pub fn ring(n: usize) -> Result<CscGraph> {
    CscGraph::from_undirected_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// Undirected star: node 0 joined to every other node.
pub fn star(n: usize) -> Result<CscGraph> {
    CscGraph::from_undirected_edges(n, (1..n).map(|i| (0, i)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeFit {
    /// Least-squares slope of `log d(k)` against `log k`, `d(k)` the k-th
    /// largest degree. Negative for skewed degree sequences.
    pub slope: f64,
    pub d_max: usize,
    pub d_min: usize,
}

/// Log-log fit of the ranked degree sequence over ranks `1..=min(n, 10^4)`.
pub fn power_law_check(g: &CscGraph) -> DegreeFit {
    let mut degrees: Vec<usize> = g.out_degree().to_vec();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    let stats = g.degree_stats();
    let points: Vec<(f64, f64)> = degrees
        .iter()
        .take(10_000)
        .enumerate()
        .filter(|(_, &d)| d > 0)
        .map(|(k, &d)| (((k + 1) as f64).ln(), (d as f64).ln()))
        .collect();
    let m = points.len() as f64;
    let slope = if points.len() < 2 {
        0.0
    } else {
        let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
        let my = points.iter().map(|p| p.1).sum::<f64>() / m;
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    };
    DegreeFit {
        slope,
        d_max: stats.d_max,
        d_min: stats.d_min,
    }
}

//! Shared oracles and corpus builders for the integration suites.
//!
//! The oracles here are deliberately independent of the library code paths
//! they cross-check: independence by exhaustive subset enumeration, matching
//! by exhaustive recursion over edge subsets.

// Each test binary uses its own subset of these helpers.
#![allow(dead_code)]

use gainrank::generators::{assign_random_gains, connected_graphs_up_to_iso, GainDomain};
use gainrank::GainGraph;

/// Independence number by enumerating all 2^n vertex subsets.
pub fn alpha_by_enumeration(g: &GainGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "enumeration oracle is for small graphs");
    let mut masks = vec![0u32; n];
    for e in g.edges() {
        masks[e.u] |= 1 << e.v;
        masks[e.v] |= 1 << e.u;
    }
    let mut best = 0;
    for subset in 0u32..(1u32 << n) {
        if (subset.count_ones() as usize) <= best {
            continue;
        }
        let mut ok = true;
        let mut bits = subset;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if masks[v] & subset != 0 {
                ok = false;
                break;
            }
        }
        if ok {
            best = subset.count_ones() as usize;
        }
    }
    best
}

/// Matching number by plain recursion over the first incident edge, no
/// pruning or heuristics.
pub fn matching_by_enumeration(g: &GainGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16, "enumeration oracle is for small graphs");
    let mut masks = vec![0u32; n];
    for e in g.edges() {
        masks[e.u] |= 1 << e.v;
        masks[e.v] |= 1 << e.u;
    }
    fn recurse(masks: &[u32], active: u32) -> usize {
        let mut v = None;
        let mut bits = active;
        while bits != 0 {
            let cand = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if masks[cand] & active != 0 {
                v = Some(cand);
                break;
            }
        }
        let Some(v) = v else { return 0 };
        // Skip v entirely, or match it with each neighbor.
        let mut best = recurse(masks, active & !(1 << v));
        let mut nbrs = masks[v] & active;
        while nbrs != 0 {
            let u = nbrs.trailing_zeros() as usize;
            nbrs &= nbrs - 1;
            best = best.max(1 + recurse(masks, active & !(1 << v) & !(1 << u)));
        }
        best
    }
    let all = if n == 32 { !0 } else { (1u32 << n) - 1 };
    recurse(&masks, all)
}

/// Every connected underlying graph up to isomorphism with `min_n <= n <=
/// max_n`, paired with `gains_per_graph` random exact gain assignments.
pub fn exhaustive_gain_corpus(
    min_n: usize,
    max_n: usize,
    gains_per_graph: usize,
    domain: GainDomain,
) -> Vec<GainGraph> {
    let mut corpus = Vec::new();
    for n in min_n..=max_n {
        for edges in connected_graphs_up_to_iso(n) {
            for trial in 0..gains_per_graph {
                let seed = (n as u64) << 32 | (corpus.len() as u64 & 0xFFFF) << 8 | trial as u64;
                corpus.push(assign_random_gains(n, &edges, domain, seed));
            }
        }
    }
    corpus
}

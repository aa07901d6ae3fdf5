//! Combinatorial invariants of the underlying graph: cyclomatic number,
//! independence and matching numbers, pendant structure, cycle detection and
//! the contraction of vertex-disjoint cycles into an acyclic graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::GainGraph;

const MAX_BITSET_VERTICES: usize = 128;

/// Basic invariants of the underlying graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub omega: usize,
    pub cyclomatic: usize,
    pub alpha: usize,
    pub matching: usize,
    pub pendant_count: usize,
}

pub fn graph_stats(g: &GainGraph) -> GraphStats {
    let (alpha, _) = independence_number(g);
    GraphStats {
        n: g.vertex_count(),
        m: g.edge_count(),
        omega: g.component_count(),
        cyclomatic: cyclomatic_number(g),
        alpha,
        matching: matching_number(g),
        pendant_count: pendant_classification(g).0.len(),
    }
}

/// m - n + omega: the dimension of the cycle space.
pub fn cyclomatic_number(g: &GainGraph) -> usize {
    g.edge_count() + g.component_count() - g.vertex_count()
}

fn neighbor_masks(g: &GainGraph) -> Vec<u128> {
    assert!(
        g.vertex_count() <= MAX_BITSET_VERTICES,
        "combinatorial solvers support at most {MAX_BITSET_VERTICES} vertices"
    );
    let mut masks = vec![0u128; g.vertex_count()];
    for e in g.edges() {
        masks[e.u] |= 1 << e.v;
        masks[e.v] |= 1 << e.u;
    }
    masks
}

/// Exact independence number with one maximum independent set as witness.
///
/// Branch and bound: branch on a maximum-degree vertex, prune with a greedy
/// clique-cover upper bound. Exactness is mandatory here, so no heuristics
/// beyond pruning.
pub fn independence_number(g: &GainGraph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    if n == 0 {
        return (0, Vec::new());
    }
    let masks = neighbor_masks(g);
    let all: u128 = if n == 128 { !0 } else { (1 << n) - 1 };
    let mut best = 0usize;
    let mut best_set = 0u128;
    alpha_branch(&masks, all, 0, 0, &mut best, &mut best_set);
    let witness = (0..n).filter(|&v| best_set >> v & 1 == 1).collect();
    (best, witness)
}

fn alpha_branch(
    masks: &[u128],
    mut active: u128,
    mut chosen: u128,
    mut size: usize,
    best: &mut usize,
    best_set: &mut u128,
) {
    // Vertices isolated within the active set always join the solution.
    loop {
        let mut grabbed = false;
        let mut rest = active;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if masks[v] & active == 0 {
                active &= !(1 << v);
                chosen |= 1 << v;
                size += 1;
                grabbed = true;
            }
        }
        if !grabbed {
            break;
        }
    }
    if active == 0 {
        if size > *best {
            *best = size;
            *best_set = chosen;
        }
        return;
    }
    if size + clique_cover_bound(masks, active) <= *best {
        return;
    }
    // Branch on a vertex of maximum active degree.
    let mut pick = usize::MAX;
    let mut pick_deg = 0;
    let mut rest = active;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (masks[v] & active).count_ones() as usize;
        if pick == usize::MAX || d > pick_deg {
            pick = v;
            pick_deg = d;
        }
    }
    let v_bit = 1u128 << pick;
    // Include pick.
    alpha_branch(
        masks,
        active & !(masks[pick] | v_bit),
        chosen | v_bit,
        size + 1,
        best,
        best_set,
    );
    // Exclude pick.
    alpha_branch(masks, active & !v_bit, chosen, size, best, best_set);
}

/// Greedy clique cover of the active set; an independent set meets each
/// clique at most once, so the clique count bounds alpha from above.
fn clique_cover_bound(masks: &[u128], active: u128) -> usize {
    let mut remaining = active;
    let mut cliques = 0;
    while remaining != 0 {
        let seed = remaining.trailing_zeros() as usize;
        let mut clique = 1u128 << seed;
        let mut candidates = masks[seed] & remaining;
        remaining &= !(1 << seed);
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            if masks[v] & clique == clique {
                clique |= 1 << v;
                remaining &= !(1 << v);
                candidates &= masks[v];
            }
        }
        cliques += 1;
    }
    cliques
}

/// Exact maximum matching size by branch and bound on the lowest-degree
/// endpoint; fine at desk scale.
pub fn matching_number(g: &GainGraph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    let masks = neighbor_masks(g);
    let all: u128 = if n == 128 { !0 } else { (1 << n) - 1 };
    let mut best = 0;
    matching_branch(&masks, all, 0, &mut best);
    best
}

fn matching_branch(masks: &[u128], active: u128, size: usize, best: &mut usize) {
    // Pick a minimum-degree vertex among those with active neighbors.
    let mut pick = usize::MAX;
    let mut pick_deg = usize::MAX;
    let mut covered = 0usize;
    let mut rest = active;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (masks[v] & active).count_ones() as usize;
        if d > 0 {
            covered += 1;
            if d < pick_deg {
                pick = v;
                pick_deg = d;
            }
        }
    }
    if pick == usize::MAX {
        if size > *best {
            *best = size;
        }
        return;
    }
    if size + covered / 2 <= *best {
        return;
    }
    // Match pick with each active neighbor.
    let mut nbrs = masks[pick] & active;
    while nbrs != 0 {
        let u = nbrs.trailing_zeros() as usize;
        nbrs &= nbrs - 1;
        matching_branch(masks, active & !(1 << pick) & !(1 << u), size + 1, best);
    }
    // Leave pick unmatched.
    matching_branch(masks, active & !(1 << pick), size, best);
}

/// Degree-one vertices and their non-pendant neighbors.
///
/// A quasi-pendant vertex is adjacent to a pendant vertex and is not itself
/// pendant; in K_2 both endpoints are pendant, so neither is quasi-pendant.
pub fn pendant_classification(g: &GainGraph) -> (Vec<usize>, Vec<usize>) {
    let deg = g.degrees();
    let adj = g.adjacency_lists();
    let pendants: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] == 1).collect();
    let mut quasi = Vec::new();
    for v in 0..g.vertex_count() {
        if deg[v] != 1 && adj[v].iter().any(|&w| deg[w] == 1) {
            quasi.push(v);
        }
    }
    (pendants, quasi)
}

/// A gain-free graph used for contraction results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    pub fn component_count(&self) -> usize {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_acyclic(&self) -> bool {
        self.edges.len() + self.component_count() == self.n
    }

    pub fn delete_vertices(&self, s: &[usize]) -> SimpleGraph {
        let mut keep = vec![true; self.n];
        for &v in s {
            keep[v] = false;
        }
        let mut map = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = next;
                next += 1;
            }
        }
        SimpleGraph {
            n: next,
            edges: self
                .edges
                .iter()
                .filter(|&&(u, v)| keep[u] && keep[v])
                .map(|&(u, v)| (map[u], map[v]))
                .collect(),
        }
    }
}

/// Maximum matching of a forest by repeatedly matching a leaf to its
/// neighbor; exact on acyclic graphs and an independent code path from the
/// branch-and-bound solvers.
pub fn forest_matching(g: &SimpleGraph) -> usize {
    debug_assert!(g.is_acyclic(), "forest matching requires an acyclic graph");
    let adj = g.adjacency_lists();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut alive = vec![true; g.n];
    let mut queue: Vec<usize> = (0..g.n).filter(|&v| deg[v] == 1).collect();
    let mut matched = 0;
    while let Some(leaf) = queue.pop() {
        if !alive[leaf] || deg[leaf] != 1 {
            continue;
        }
        let Some(&partner) = adj[leaf].iter().find(|&&w| alive[w]) else {
            continue;
        };
        matched += 1;
        for dead in [leaf, partner] {
            alive[dead] = false;
            for &w in &adj[dead] {
                if alive[w] {
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        queue.push(w);
                    }
                }
            }
        }
    }
    matched
}

/// Independence number of a forest via the matching identity alpha + m = n.
pub fn forest_alpha(g: &SimpleGraph) -> usize {
    g.n - forest_matching(g)
}

/// Result of scanning the cycle structure of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleScan {
    /// True when all cycles of the graph are pairwise vertex-disjoint.
    pub disjoint: bool,
    /// The cycles as vertex sequences; enumerated only when `disjoint`.
    pub cycles: Vec<Vec<usize>>,
}

/// Detects whether all cycles are pairwise vertex-disjoint and enumerates
/// them when they are.
///
/// Disjointness holds exactly when every biconnected block on three or more
/// vertices is a cycle and no vertex belongs to two such blocks. A block
/// that is a cycle contains exactly one cycle of the graph, and a denser
/// block contains two cycles sharing vertices, so this scan is complete.
pub fn find_cycles(g: &GainGraph) -> CycleScan {
    let blocks = biconnected_components(g);
    let mut cycle_membership = vec![0usize; g.vertex_count()];
    let mut cycles = Vec::new();
    for block in &blocks {
        if block.vertices.len() < 3 {
            continue;
        }
        if block.edge_count != block.vertices.len() {
            // A 2-connected block denser than a cycle has overlapping cycles.
            return CycleScan {
                disjoint: false,
                cycles: Vec::new(),
            };
        }
        for &v in &block.vertices {
            cycle_membership[v] += 1;
            if cycle_membership[v] > 1 {
                // Two cycle blocks share a cut vertex.
                return CycleScan {
                    disjoint: false,
                    cycles: Vec::new(),
                };
            }
        }
        cycles.push(cycle_sequence(g, &block.vertices));
    }
    CycleScan {
        disjoint: true,
        cycles,
    }
}

/// Orders the vertex set of a cycle block into a traversal sequence starting
/// at its smallest vertex.
fn cycle_sequence(g: &GainGraph, vertices: &[usize]) -> Vec<usize> {
    let in_block: std::collections::HashSet<usize> = vertices.iter().copied().collect();
    let adj = g.adjacency_lists();
    let start = *vertices.iter().min().unwrap();
    let mut seq = vec![start];
    let mut prev = usize::MAX;
    let mut current = start;
    loop {
        let mut nbrs: Vec<usize> = adj[current]
            .iter()
            .copied()
            .filter(|w| in_block.contains(w) && *w != prev)
            .collect();
        nbrs.sort_unstable();
        let next = nbrs[0];
        if next == start {
            break;
        }
        seq.push(next);
        prev = current;
        current = next;
    }
    seq
}

struct Block {
    vertices: Vec<usize>,
    edge_count: usize,
}

/// Biconnected components by Tarjan's lowpoint algorithm (iterative).
fn biconnected_components(g: &GainGraph) -> Vec<Block> {
    let n = g.vertex_count();
    let adj = g.adjacency_lists();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut parent = vec![usize::MAX; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut blocks = Vec::new();

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, index into adjacency list)
        let mut call_stack: Vec<(usize, usize)> = vec![(root, 0)];
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        while let Some(&mut (v, ref mut idx)) = call_stack.last_mut() {
            if *idx < adj[v].len() {
                let w = adj[v][*idx];
                *idx += 1;
                if disc[w] == usize::MAX {
                    parent[w] = v;
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    edge_stack.push((v, w));
                    call_stack.push((w, 0));
                } else if w != parent[v] && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                call_stack.pop();
                if let Some(&mut (u, _)) = call_stack.last_mut() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        // (u, v) closes a block; pop its edges.
                        let mut verts = std::collections::HashSet::new();
                        let mut edge_count = 0;
                        while let Some(&(x, y)) = edge_stack.last() {
                            if disc[x] >= disc[v] || (x, y) == (u, v) {
                                edge_stack.pop();
                                edge_count += 1;
                                verts.insert(x);
                                verts.insert(y);
                                if (x, y) == (u, v) {
                                    break;
                                }
                            } else {
                                break;
                            }
                        }
                        let mut vertices: Vec<usize> = verts.into_iter().collect();
                        vertices.sort_unstable();
                        blocks.push(Block {
                            vertices,
                            edge_count,
                        });
                    }
                }
            }
        }
    }
    blocks
}

/// Vertices lying on at least one cycle: members of blocks with >= 3
/// vertices. Works whether or not cycles are disjoint.
pub fn cycle_vertices(g: &GainGraph) -> Vec<bool> {
    let mut on_cycle = vec![false; g.vertex_count()];
    for block in biconnected_components(g) {
        if block.vertices.len() >= 3 {
            for v in block.vertices {
                on_cycle[v] = true;
            }
        }
    }
    on_cycle
}

/// Cut vertices: members of at least two blocks.
pub fn cut_vertices(g: &GainGraph) -> Vec<usize> {
    let mut membership = vec![0usize; g.vertex_count()];
    for block in biconnected_components(g) {
        for v in block.vertices {
            membership[v] += 1;
        }
    }
    (0..g.vertex_count()).filter(|&v| membership[v] >= 2).collect()
}

/// Where a vertex of the contracted graph comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ContractedOrigin {
    /// An original vertex that was not on any cycle.
    Original(usize),
    /// A whole cycle, by its index in the cycle list.
    Cycle(usize),
}

/// The acyclic graph obtained by contracting each cycle to a single vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractionResult {
    /// The contracted acyclic graph.
    pub t_graph: SimpleGraph,
    /// Ids (in `t_graph`) of the vertices produced by contracting cycles.
    pub cyclic_vertices: Vec<usize>,
    /// `t_graph` with the cyclic vertices deleted.
    pub t_bracket: SimpleGraph,
    /// Origin of each `t_graph` vertex.
    pub origin: Vec<ContractedOrigin>,
}

/// Contracts each cycle of a graph with pairwise vertex-disjoint cycles into
/// a single vertex, keeping all external adjacencies and dropping gains.
pub fn contract_cycles(g: &GainGraph) -> Result<ContractionResult> {
    let scan = find_cycles(g);
    if !scan.disjoint {
        return Err(Error::CyclesNotDisjoint);
    }
    let n = g.vertex_count();
    let mut cycle_of = vec![usize::MAX; n];
    for (idx, cyc) in scan.cycles.iter().enumerate() {
        for &v in cyc {
            cycle_of[v] = idx;
        }
    }
    // Non-cycle vertices first (in original order), then one vertex per cycle.
    let mut map = vec![usize::MAX; n];
    let mut origin = Vec::new();
    let mut next = 0;
    for v in 0..n {
        if cycle_of[v] == usize::MAX {
            map[v] = next;
            origin.push(ContractedOrigin::Original(v));
            next += 1;
        }
    }
    let mut cyclic_vertices = Vec::new();
    let mut cycle_vertex = vec![usize::MAX; scan.cycles.len()];
    for (idx, slot) in cycle_vertex.iter_mut().enumerate() {
        *slot = next;
        cyclic_vertices.push(next);
        origin.push(ContractedOrigin::Cycle(idx));
        next += 1;
    }
    for v in 0..n {
        if cycle_of[v] != usize::MAX {
            map[v] = cycle_vertex[cycle_of[v]];
        }
    }
    let mut edges = Vec::new();
    for e in g.edges() {
        let (a, b) = (map[e.u], map[e.v]);
        if a == b {
            continue; // internal cycle edge
        }
        let key = (a.min(b), a.max(b));
        debug_assert!(
            !edges.contains(&key),
            "disjoint cycles cannot produce parallel edges"
        );
        edges.push(key);
    }
    let t_graph = SimpleGraph { n: next, edges };
    debug_assert!(t_graph.is_acyclic(), "contraction must be acyclic");
    let t_bracket = t_graph.delete_vertices(&cyclic_vertices);
    Ok(ContractionResult {
        t_graph,
        cyclic_vertices,
        t_bracket,
        origin,
    })
}

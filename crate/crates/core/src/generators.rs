//! Test-instance construction: random gain graphs, cycles of prescribed
//! type, certified lower-optimal graphs, and exhaustive enumeration of small
//! connected graphs up to isomorphism.
//!
//! Every generator is a deterministic function of its seed.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gain::{GaussRat, UnitGain};
use crate::graph::GainGraph;
use crate::cycle::CycleType;
use crate::linalg::DEFAULT_TOL;
use crate::theorems::is_lower_optimal_by_rank;

/// Gain value pools for random generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainDomain {
    /// {1, -1, i, -i}.
    FourthRoots,
    /// Fourth roots plus Pythagorean units such as (3+4i)/5.
    PythagoreanExact,
    /// Uniform angles on the circle (floating point).
    RandomAngle,
}

impl std::str::FromStr for GainDomain {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let normalized: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .flat_map(char::to_lowercase)
            .collect();
        match normalized.as_str() {
            "fourthroots" => Ok(GainDomain::FourthRoots),
            "pythagorean" | "pythagoreanexact" => Ok(GainDomain::PythagoreanExact),
            "randomangle" => Ok(GainDomain::RandomAngle),
            _ => Err(Error::InvalidParameter(format!(
                "unknown gain domain {s:?}; use fourth-roots, pythagorean or random-angle"
            ))),
        }
    }
}

fn fourth_roots() -> Vec<GaussRat> {
    vec![
        GaussRat::from_ints(1, 0),
        GaussRat::from_ints(-1, 0),
        GaussRat::from_ints(0, 1),
        GaussRat::from_ints(0, -1),
    ]
}

fn pythagorean_units() -> Vec<GaussRat> {
    let mut units = Vec::new();
    for (a, b) in [(3i64, 4i64), (4, 3)] {
        for sa in [1i64, -1] {
            for sb in [1i64, -1] {
                units.push(GaussRat::from_parts(sa * a, 5, sb * b, 5));
            }
        }
    }
    units
}

fn exact_pool(domain: GainDomain) -> Vec<GaussRat> {
    match domain {
        GainDomain::FourthRoots => fourth_roots(),
        GainDomain::PythagoreanExact => {
            let mut pool = fourth_roots();
            pool.extend(pythagorean_units());
            pool
        }
        GainDomain::RandomAngle => unreachable!("angle domain has no exact pool"),
    }
}

fn random_gain(rng: &mut ChaCha8Rng, domain: GainDomain) -> UnitGain {
    match domain {
        GainDomain::RandomAngle => {
            UnitGain::from_angle(rng.gen_range(0.0..std::f64::consts::TAU))
        }
        exact => {
            let pool = exact_pool(exact);
            UnitGain::Exact(pool[rng.gen_range(0..pool.len())].clone())
        }
    }
}

/// Erdos-Renyi underlying graph with gains drawn uniformly from the domain.
pub fn random_gain_graph(n: usize, p: f64, domain: GainDomain, seed: u64) -> GainGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((u, v, random_gain(&mut rng, domain)));
            }
        }
    }
    GainGraph::new(n, edges).expect("generated edges are valid")
}

/// Random gains from the domain on a fixed underlying edge set.
pub fn assign_random_gains(
    n: usize,
    edges: &[(usize, usize)],
    domain: GainDomain,
    seed: u64,
) -> GainGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gained = edges
        .iter()
        .map(|&(u, v)| (u, v, random_gain(&mut rng, domain)))
        .collect();
    GainGraph::new(n, gained).expect("underlying edges are valid")
}

/// Uniform random recursive tree on n vertices with random gains.
pub fn random_gain_tree(n: usize, domain: GainDomain, seed: u64) -> GainGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        edges.push((parent, v, random_gain(&mut rng, domain)));
    }
    GainGraph::new(n, edges).expect("generated edges are valid")
}

/// Multiplies the gains at one endpoint by a unit and its conjugate at the
/// other orientation; all cycle gain products are preserved.
fn gauge_twist(edges: &mut [(usize, usize, UnitGain)], vertex: usize, unit: &GaussRat) {
    for (u, v, gain) in edges.iter_mut() {
        let UnitGain::Exact(z) = gain else {
            continue;
        };
        if *u == vertex {
            *gain = UnitGain::Exact(unit * z);
        } else if *v == vertex {
            *gain = UnitGain::Exact(&unit.conj() * z);
        }
    }
}

/// Cycle edge list 0-1-...-(l-1)-0 whose directed traversal product equals
/// `product`, then scrambled by random gauge twists so the product is spread
/// across edges.
fn cycle_edges_with_product(
    l: usize,
    product: &GaussRat,
    rng: &mut ChaCha8Rng,
) -> Vec<(usize, usize, UnitGain)> {
    let mut edges: Vec<(usize, usize, UnitGain)> =
        (0..l - 1).map(|i| (i, i + 1, UnitGain::one())).collect();
    // Stored as (0, l-1); the traversal uses the reverse orientation, so the
    // stored gain is the conjugate of the wanted product.
    edges.push((0, l - 1, UnitGain::Exact(product.conj())));
    let twist_pool = {
        let mut pool = fourth_roots();
        pool.extend(pythagorean_units());
        pool
    };
    for _ in 0..3 * l {
        let vertex = rng.gen_range(0..l);
        let unit = twist_pool[rng.gen_range(0..twist_pool.len())].clone();
        gauge_twist(&mut edges, vertex, &unit);
    }
    edges
}

fn alternating_sign(k: usize) -> GaussRat {
    if k % 2 == 0 {
        GaussRat::from_ints(1, 0)
    } else {
        GaussRat::from_ints(-1, 0)
    }
}

/// Picks an exact gain product realizing the requested cycle type.
fn product_for_type(l: usize, ty: CycleType, rng: &mut ChaCha8Rng) -> Result<GaussRat> {
    let even = l % 2 == 0;
    if ty.requires_even_length() != even {
        return Err(Error::TypeParityMismatch {
            cycle_type: ty.as_char(),
            required: if ty.requires_even_length() { "even" } else { "odd" },
            length: l,
        });
    }
    Ok(match ty {
        CycleType::A => alternating_sign(l / 2),
        CycleType::B => {
            let target = alternating_sign(l / 2);
            let mut pool = fourth_roots();
            pool.extend(pythagorean_units());
            pool.retain(|z| *z != target);
            pool[rng.gen_range(0..pool.len())].clone()
        }
        CycleType::C | CycleType::D => {
            let sign = alternating_sign((l - 1) / 2);
            let positive_re = [
                GaussRat::from_ints(1, 0),
                GaussRat::from_parts(3, 5, 4, 5),
                GaussRat::from_parts(3, 5, -4, 5),
                GaussRat::from_parts(4, 5, 3, 5),
                GaussRat::from_parts(4, 5, -3, 5),
            ];
            let u = positive_re[rng.gen_range(0..positive_re.len())].clone();
            let u = if ty == CycleType::C { u } else { -&u };
            &sign * &u
        }
        CycleType::E => {
            // The only exact unit solutions of Re(sign * z) = 0.
            let z = if rng.gen_bool(0.5) {
                GaussRat::from_ints(0, 1)
            } else {
                GaussRat::from_ints(0, -1)
            };
            &alternating_sign((l - 1) / 2) * &z
        }
    })
}

/// A cycle on l vertices whose gain product satisfies the defining predicate
/// of the requested type exactly.
pub fn cycle_of_type(l: usize, ty: CycleType, seed: u64) -> Result<GainGraph> {
    if l < 3 {
        return Err(Error::CycleTooShort(l));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let product = product_for_type(l, ty, &mut rng)?;
    let edges = cycle_edges_with_product(l, &product, &mut rng);
    GainGraph::new(l, edges)
}

/// Incremental builder for certified lower-optimal instances. Growth is
/// restricted to operations that preserve the lower bound being attained:
/// disjoint type A / type E cycles, pendant pairs rooted off all cycles, and
/// component-joining pendant pairs.
struct OptimalBuilder {
    rng: ChaCha8Rng,
    n: usize,
    edges: Vec<(usize, usize, UnitGain)>,
    on_cycle: Vec<bool>,
    parent: Vec<usize>,
}

impl OptimalBuilder {
    fn new(seed: u64) -> Self {
        OptimalBuilder {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n: 0,
            edges: Vec::new(),
            on_cycle: Vec::new(),
            parent: Vec::new(),
        }
    }

    fn add_vertex(&mut self, on_cycle: bool) -> usize {
        let id = self.n;
        self.n += 1;
        self.on_cycle.push(on_cycle);
        self.parent.push(id);
        id
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let root = self.find(self.parent[v]);
            self.parent[v] = root;
        }
        self.parent[v]
    }

    fn add_edge(&mut self, u: usize, v: usize, gain: UnitGain) {
        let (ru, rv) = (self.find(u), self.find(v));
        self.parent[ru] = rv;
        self.edges.push((u, v, gain));
    }

    fn random_exact_gain(&mut self) -> UnitGain {
        let pool = exact_pool(GainDomain::PythagoreanExact);
        UnitGain::Exact(pool[self.rng.gen_range(0..pool.len())].clone())
    }

    /// Adds a disjoint cycle: type A when even, type E when odd.
    fn add_cycle(&mut self, l: usize) -> Result<Vec<usize>> {
        if l < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle length {l} is below 3"
            )));
        }
        let ty = if l % 2 == 0 { CycleType::A } else { CycleType::E };
        let product = product_for_type(l, ty, &mut self.rng)?;
        let local = cycle_edges_with_product(l, &product, &mut self.rng);
        let base = self.n;
        let ids: Vec<usize> = (0..l).map(|_| self.add_vertex(true)).collect();
        for (u, v, gain) in local {
            self.add_edge(base + u, base + v, gain);
        }
        Ok(ids)
    }

    /// Adds a pendant pair: a new vertex v joined to `target` (when given)
    /// plus a new pendant u on v. The quasi-pendant v is never on a cycle,
    /// which is what keeps the construction lower-optimal.
    fn attach_pendant_pair(&mut self, target: Option<usize>) -> (usize, usize) {
        let v = self.add_vertex(false);
        if let Some(t) = target {
            let gain = self.random_exact_gain();
            self.add_edge(t, v, gain);
        }
        let u = self.add_vertex(false);
        let gain = self.random_exact_gain();
        self.add_edge(v, u, gain);
        (v, u)
    }

    /// Joins two components with a pendant pair whose root v gets one edge
    /// into each; v stays off all cycles because the components are disjoint.
    fn bridge(&mut self, target_a: usize, target_b: usize) {
        debug_assert_ne!(self.find(target_a), self.find(target_b));
        let v = self.add_vertex(false);
        let g1 = self.random_exact_gain();
        self.add_edge(target_a, v, g1);
        let g2 = self.random_exact_gain();
        self.add_edge(target_b, v, g2);
        let u = self.add_vertex(false);
        let g3 = self.random_exact_gain();
        self.add_edge(v, u, g3);
    }

    fn tree_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| !self.on_cycle[v]).collect()
    }

    fn finish(self) -> Result<GainGraph> {
        let g = GainGraph::new(self.n, self.edges)?;
        let verdict = is_lower_optimal_by_rank(&g, DEFAULT_TOL)?;
        if !verdict.lower_optimal {
            return Err(Error::CertificationFailed);
        }
        Ok(g)
    }
}

/// Builds a certified lower-optimal instance: disjoint type A (even length)
/// and type E (odd length) cycles, plus trees grown by pendant pairs whose
/// roots attach to existing off-cycle vertices or start fresh components.
/// The output is certified against the rank test before being returned.
pub fn lower_optimal_instance(
    cycle_lengths: &[usize],
    growth_steps: usize,
    seed: u64,
) -> Result<GainGraph> {
    let mut builder = OptimalBuilder::new(seed);
    for &l in cycle_lengths {
        builder.add_cycle(l)?;
    }
    if cycle_lengths.is_empty() {
        builder.add_vertex(false);
    }
    for _ in 0..growth_steps {
        let targets = builder.tree_vertices();
        let target = if targets.is_empty() || builder.rng.gen_bool(0.25) {
            None
        } else {
            Some(targets[builder.rng.gen_range(0..targets.len())])
        };
        builder.attach_pendant_pair(target);
    }
    builder.finish()
}

/// Builds a certified, connected lower-optimal instance in which every cycle
/// is a pendant cycle: each cycle receives a pendant pair rooted at one of
/// its vertices, trees grow from those roots, and components are joined by
/// bridging pendant pairs.
pub fn lower_optimal_with_pendant_cycles(
    cycle_lengths: &[usize],
    growth_steps: usize,
    seed: u64,
) -> Result<GainGraph> {
    if cycle_lengths.is_empty() {
        return Err(Error::InvalidParameter(
            "at least one cycle length is required".into(),
        ));
    }
    let mut builder = OptimalBuilder::new(seed);
    let mut tails = Vec::new();
    for &l in cycle_lengths {
        let cyc = builder.add_cycle(l)?;
        let attach = cyc[builder.rng.gen_range(0..cyc.len())];
        let (v, _) = builder.attach_pendant_pair(Some(attach));
        tails.push(v);
    }
    // Join all components through their tails.
    for w in 1..tails.len() {
        let a = {
            // Any off-cycle vertex already connected to tail 0's component.
            let root = builder.find(tails[0]);
            let candidates: Vec<usize> = builder
                .tree_vertices()
                .into_iter()
                .filter(|&v| builder.find(v) == root)
                .collect();
            candidates[builder.rng.gen_range(0..candidates.len())]
        };
        let b = tails[w];
        builder.bridge(a, b);
    }
    for _ in 0..growth_steps {
        let targets = builder.tree_vertices();
        let target = targets[builder.rng.gen_range(0..targets.len())];
        builder.attach_pendant_pair(Some(target));
    }
    builder.finish()
}

/// All connected graphs on n vertices up to isomorphism, as edge lists.
/// Enumerates edge masks and keeps the lexicographically minimal
/// representative of each isomorphism class. Intended for small n.
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n <= 8, "exhaustive enumeration is for n <= 8");
    if n == 0 {
        return vec![Vec::new()];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut pair_index = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        pair_index[i][j] = k;
        pair_index[j][i] = k;
    }
    // Bit relabeling maps for every non-identity permutation.
    let mut perm_maps: Vec<Vec<usize>> = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if !perm.iter().enumerate().all(|(i, &p)| i == p) {
            perm_maps.push(
                pairs
                    .iter()
                    .map(|&(i, j)| pair_index[perm[i]][perm[j]])
                    .collect(),
            );
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let mut result = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        if (mask.count_ones() as usize) < n.saturating_sub(1) {
            continue;
        }
        if !mask_connected(mask, &pairs, n) {
            continue;
        }
        if !mask_is_canonical(mask, &perm_maps) {
            continue;
        }
        result.push(
            pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect(),
        );
    }
    result
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

fn mask_connected(mask: u32, pairs: &[(usize, usize)], n: usize) -> bool {
    let mut adj = vec![0u8; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        if mask >> k & 1 == 1 {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
    }
    let mut seen: u8 = 1;
    let mut frontier: u8 = 1;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & !seen;
        seen |= new;
        frontier |= new;
    }
    seen.count_ones() as usize == n
}

fn mask_is_canonical(mask: u32, perm_maps: &[Vec<usize>]) -> bool {
    for map in perm_maps {
        let mut transformed = 0u32;
        let mut bits = mask;
        while bits != 0 {
            let k = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            transformed |= 1 << map[k];
        }
        if transformed < mask {
            return false;
        }
    }
    true
}

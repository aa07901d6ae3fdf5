//! Gain graph representation: an undirected simple graph whose oriented edges
//! carry unit complex gains with conjugate-inverse symmetry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gain::UnitGain;

/// Which arithmetic the gains of a graph live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainMode {
    Exact,
    Approx,
}

/// One stored edge, canonically oriented `u < v`; the gain is the gain of the
/// u -> v orientation, the reverse orientation carries its conjugate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainEdge {
    pub u: usize,
    pub v: usize,
    pub gain: UnitGain,
}

/// An undirected simple graph with unit complex gains.
///
/// Gains are homogeneous: all exact or all angle-based. Vertices are
/// `0..n`. Values are immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct GainGraph {
    n: usize,
    edges: Vec<GainEdge>,
}

impl GainGraph {
    /// Builds a gain graph, canonicalizing edge orientations: an input edge
    /// (v, u, g) with v > u is stored as (u, v, conj(g)).
    pub fn new(n: usize, edges: Vec<(usize, usize, UnitGain)>) -> Result<Self> {
        let mut canonical: Vec<GainEdge> = Vec::with_capacity(edges.len());
        let mut mode: Option<GainMode> = None;
        for (a, b, gain) in edges {
            if a == b {
                return Err(Error::LoopEdge(a));
            }
            for id in [a, b] {
                if id >= n {
                    return Err(Error::VertexOutOfRange { id, n });
                }
            }
            if let UnitGain::Exact(z) = &gain {
                if !z.is_unit() {
                    return Err(Error::NonUnitGain {
                        norm: z.norm_sqr().to_string(),
                    });
                }
            }
            let edge_mode = match gain {
                UnitGain::Exact(_) => GainMode::Exact,
                UnitGain::Approx(_) => GainMode::Approx,
            };
            match mode {
                None => mode = Some(edge_mode),
                Some(m) if m != edge_mode => return Err(Error::MixedGainModes),
                _ => {}
            }
            let (u, v, gain) = if a < b {
                (a, b, gain)
            } else {
                (b, a, gain.conjugate())
            };
            if canonical.iter().any(|e| e.u == u && e.v == v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            canonical.push(GainEdge { u, v, gain });
        }
        canonical.sort_by_key(|e| (e.u, e.v));
        Ok(GainGraph {
            n,
            edges: canonical,
        })
    }

    /// Convenience constructor: every edge carries gain 1.
    pub fn with_unit_gains(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            n,
            edges.iter().map(|&(u, v)| (u, v, UnitGain::one())).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[GainEdge] {
        &self.edges
    }

    /// All gains exact, all approx, or Exact for the edgeless graph.
    pub fn gain_mode(&self) -> GainMode {
        match self.edges.first() {
            Some(e) if !e.gain.is_exact() => GainMode::Approx,
            _ => GainMode::Exact,
        }
    }

    /// Gain of the oriented edge a -> b, if present.
    pub fn oriented_gain(&self, a: usize, b: usize) -> Option<UnitGain> {
        let (u, v) = (a.min(b), a.max(b));
        let e = self.edges.iter().find(|e| e.u == u && e.v == v)?;
        Some(if a < b {
            e.gain.clone()
        } else {
            e.gain.conjugate()
        })
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (u, v) = (a.min(b), a.max(b));
        self.edges.iter().any(|e| e.u == u && e.v == v)
    }

    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg
    }

    /// Induced subgraph after deleting the vertex set `s`, together with the
    /// old -> new id map (None for deleted vertices).
    pub fn delete_vertices(&self, s: &[usize]) -> Result<(GainGraph, Vec<Option<usize>>)> {
        for &id in s {
            if id >= self.n {
                return Err(Error::VertexOutOfRange { id, n: self.n });
            }
        }
        let mut keep = vec![true; self.n];
        for &id in s {
            keep[id] = false;
        }
        let mut map = vec![None; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if keep[v] {
                map[v] = Some(next);
                next += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| keep[e.u] && keep[e.v])
            .map(|e| GainEdge {
                u: map[e.u].unwrap(),
                v: map[e.v].unwrap(),
                gain: e.gain.clone(),
            })
            .collect();
        Ok((
            GainGraph {
                n: next,
                edges,
            },
            map,
        ))
    }

    /// Induced subgraph on the complement: keeps exactly the listed vertices.
    pub fn induced(&self, keep: &[usize]) -> Result<(GainGraph, Vec<Option<usize>>)> {
        let mut drop = Vec::new();
        let mut keep_mask = vec![false; self.n];
        for &id in keep {
            if id >= self.n {
                return Err(Error::VertexOutOfRange { id, n: self.n });
            }
            keep_mask[id] = true;
        }
        for (v, &kept) in keep_mask.iter().enumerate() {
            if !kept {
                drop.push(v);
            }
        }
        self.delete_vertices(&drop)
    }

    /// Connected components, each with its new -> old vertex map.
    pub fn components(&self) -> Vec<(GainGraph, Vec<usize>)> {
        let adj = self.adjacency_lists();
        let mut comp = vec![usize::MAX; self.n];
        let mut count = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = count;
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for v in 0..self.n {
            members[comp[v]].push(v);
        }
        members
            .into_iter()
            .map(|verts| {
                let (g, _) = self.induced(&verts).expect("component ids are valid");
                (g, verts)
            })
            .collect()
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

    /// Relabels vertices: vertex v becomes perm[v].
    pub fn relabel(&self, perm: &[usize]) -> Result<GainGraph> {
        if perm.len() != self.n {
            return Err(Error::InvalidParameter(
                "permutation length must equal vertex count".into(),
            ));
        }
        let edges = self
            .edges
            .iter()
            .map(|e| (perm[e.u], perm[e.v], e.gain.clone()))
            .collect();
        GainGraph::new(self.n, edges)
    }
}

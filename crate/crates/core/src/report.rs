//! Full analysis of one gain graph, serializable as JSON.

use serde::Serialize;

use crate::cycle::{analyze_cycles, CycleRecord};
use crate::error::{Error, Result};
use crate::linalg::{adjacency_matrix, Inertia};
use crate::graph::GainGraph;
use crate::structure::{find_cycles, graph_stats, independence_number, GraphStats};
use crate::theorems::{
    check_bounds, is_lower_optimal_by_rank, is_lower_optimal_by_structure, StructuralCheck,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witnesses {
    /// One maximum independent set.
    pub independent_set: Vec<usize>,
}

/// Everything the analyzer knows about one graph.
///
/// `lower_optimal_by_structure` is absent when the structural test cannot
/// run, which only happens for approximate gains too close to a
/// classification boundary; `structure_note` then carries the reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub stats: GraphStats,
    pub rank: usize,
    pub rank_is_exact: bool,
    pub inertia: Inertia,
    pub bound_lower: i64,
    pub bound_upper: i64,
    pub bounds_hold: bool,
    pub disjoint_cycles: bool,
    /// Cycle records; None when cycles overlap and are not enumerated.
    pub cycles: Option<Vec<CycleRecord>>,
    pub lower_optimal_by_rank: bool,
    pub lower_optimal_by_structure: Option<StructuralCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_note: Option<String>,
    pub witnesses: Witnesses,
}

impl AnalysisReport {
    /// True when a theorem-level inconsistency is present: the two-sided
    /// bound fails, or the two lower-optimality verdicts disagree while both
    /// are exact.
    pub fn violation(&self) -> Option<String> {
        if !self.bounds_hold {
            return Some(format!(
                "rank bound violated: {} <= {} <= {} is false",
                self.bound_lower, self.rank, self.bound_upper
            ));
        }
        if self.rank_is_exact {
            if let Some(s) = &self.lower_optimal_by_structure {
                if s.lower_optimal != self.lower_optimal_by_rank {
                    return Some(format!(
                        "lower-optimality verdicts disagree: rank says {}, structure says {}",
                        self.lower_optimal_by_rank, s.lower_optimal
                    ));
                }
            }
        }
        None
    }
}

/// Runs the whole pipeline on one graph.
pub fn analyze(g: &GainGraph, tol: f64) -> Result<AnalysisReport> {
    let stats = graph_stats(g);
    let bounds = check_bounds(g, tol)?;
    let inertia = adjacency_matrix(g).inertia(tol)?;
    let scan = find_cycles(g);
    let cycles = if scan.disjoint {
        match analyze_cycles(g, &scan.cycles, tol) {
            Ok(records) => Some(records),
            Err(Error::AmbiguousTypeBoundary { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    let rank_verdict = is_lower_optimal_by_rank(g, tol)?;
    let (structure, structure_note) = match is_lower_optimal_by_structure(g, tol) {
        Ok(s) => (Some(s), None),
        Err(Error::AmbiguousTypeBoundary { quantity, value, tol }) => (
            None,
            Some(format!(
                "structural test skipped: ambiguous boundary ({quantity} = {value:e}, tol {tol:e})"
            )),
        ),
        Err(e) => return Err(e),
    };
    let (_, independent_set) = independence_number(g);
    Ok(AnalysisReport {
        stats,
        rank: bounds.rank,
        rank_is_exact: bounds.exact,
        inertia,
        bound_lower: bounds.lower,
        bound_upper: bounds.upper,
        bounds_hold: bounds.holds,
        disjoint_cycles: scan.disjoint,
        cycles,
        lower_optimal_by_rank: rank_verdict.lower_optimal,
        lower_optimal_by_structure: structure,
        structure_note,
        witnesses: Witnesses { independent_set },
    })
}

//! Rank, inertia and extremal-bound analysis of complex unit gain graphs.
//!
//! A gain graph carries a unit complex number on each oriented edge, with
//! the reverse orientation carrying the conjugate. This crate computes the
//! rank and inertia of the associated Hermitian adjacency matrix (exactly,
//! in Gaussian-rational arithmetic, or numerically for angle-valued gains),
//! the independence and cyclomatic numbers of the underlying graph, the
//! five-way classification of cycles by their gain products, and the
//! machinery connecting them: the two-sided rank bound
//! `2n - 2c - 2alpha <= r <= 2n - 2alpha` and the structural
//! characterization of the graphs attaining the lower bound.

pub mod cycle;
pub mod error;
pub mod gain;
pub mod generators;
pub mod graph;
pub mod jsonio;
pub mod linalg;
pub mod report;
pub mod structure;
pub mod theorems;

pub use error::{Error, Result};
pub use gain::{GaussRat, UnitGain};
pub use graph::{GainEdge, GainGraph, GainMode};
pub use linalg::{adjacency_matrix, HermitianMatrix, Inertia, DEFAULT_TOL};
pub use report::{analyze, AnalysisReport};

//! Rank and inertia of Hermitian gain adjacency matrices.
//!
//! Exact matrices are eliminated in Gaussian-rational arithmetic with no
//! tolerances. Inertia of an exact matrix comes from a congruence
//! diagonalization, so eigenvalues are never computed; Sylvester's law of
//! inertia makes the sign counts well defined. Approximate matrices go
//! through a Hermitian eigendecomposition with a relative tolerance.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gain::GaussRat;
use crate::graph::{GainGraph, GainMode};

/// Relative tolerance used to decide zero singular values / eigenvalues of
/// approximate matrices. Exposed as a CLI flag.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Eigenvalue sign counts of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn dimension(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

/// Dense n x n matrix of exact Gaussian rationals, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    n: usize,
    entries: Vec<GaussRat>,
}

impl ExactMatrix {
    pub fn zeros(n: usize) -> Self {
        ExactMatrix {
            n,
            entries: vec![GaussRat::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRat {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: GaussRat) {
        self.entries[i * self.n + j] = value;
    }

    pub fn to_complex(&self) -> ApproxMatrix {
        ApproxMatrix {
            n: self.n,
            entries: self.entries.iter().map(|z| z.to_complex64()).collect(),
        }
    }

    fn check_hermitian(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i..self.n {
                if *self.get(i, j) != self.get(j, i).conj() {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        Ok(())
    }
}

/// Dense n x n complex floating matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl ApproxMatrix {
    pub fn zeros(n: usize) -> Self {
        ApproxMatrix {
            n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.entries[i * self.n + j] = value;
    }

    fn check_finite(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                let z = self.get(i, j);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFiniteEntry(i, j));
                }
            }
        }
        Ok(())
    }

    fn check_hermitian(&self) -> Result<()> {
        for i in 0..self.n {
            for j in i..self.n {
                let a = self.get(i, j);
                let b = self.get(j, i);
                if (a - b.conj()).norm() > 1e-12 * (1.0 + a.norm()) {
                    return Err(Error::NotHermitian(i, j));
                }
            }
        }
        Ok(())
    }

    fn max_entry_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn eigenvalues(&self) -> Vec<f64> {
        if self.n == 0 {
            return Vec::new();
        }
        let m = DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j));
        m.symmetric_eigen().eigenvalues.iter().copied().collect()
    }
}

/// The gain adjacency matrix of a graph: Hermitian, zero diagonal, unit
/// modulus off-diagonal entries where edges exist.
#[derive(Debug, Clone, PartialEq)]
pub enum HermitianMatrix {
    Exact(ExactMatrix),
    Approx(ApproxMatrix),
}

impl HermitianMatrix {
    pub fn dim(&self) -> usize {
        match self {
            HermitianMatrix::Exact(m) => m.dim(),
            HermitianMatrix::Approx(m) => m.dim(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, HermitianMatrix::Exact(_))
    }

    /// Rank using the arithmetic native to the matrix.
    pub fn rank(&self, tol: f64) -> Result<usize> {
        match self {
            HermitianMatrix::Exact(m) => Ok(rank_exact_matrix(m)),
            HermitianMatrix::Approx(_) => rank_approx(self, tol),
        }
    }

    pub fn inertia(&self, tol: f64) -> Result<Inertia> {
        match self {
            HermitianMatrix::Exact(m) => {
                m.check_hermitian()?;
                Ok(inertia_exact(m))
            }
            HermitianMatrix::Approx(m) => inertia_approx(m, tol),
        }
    }
}

/// Builds the gain adjacency matrix of a graph: entry (i, j) is the gain of
/// the i -> j orientation when the edge is present, zero otherwise. A graph
/// with all gains 1 yields the ordinary 0/1 adjacency matrix.
pub fn adjacency_matrix(g: &GainGraph) -> HermitianMatrix {
    let n = g.vertex_count();
    match g.gain_mode() {
        GainMode::Exact => {
            let mut m = ExactMatrix::zeros(n);
            for e in g.edges() {
                let z = match &e.gain {
                    crate::gain::UnitGain::Exact(z) => z.clone(),
                    crate::gain::UnitGain::Approx(_) => unreachable!("mode is exact"),
                };
                m.set(e.u, e.v, z.clone());
                m.set(e.v, e.u, z.conj());
            }
            HermitianMatrix::Exact(m)
        }
        GainMode::Approx => {
            let mut m = ApproxMatrix::zeros(n);
            for e in g.edges() {
                let z = e.gain.to_complex64();
                m.set(e.u, e.v, z);
                m.set(e.v, e.u, z.conj());
            }
            HermitianMatrix::Approx(m)
        }
    }
}

/// Rank over the complex field by exact Gaussian elimination; the pivot is
/// the first nonzero entry in column order, no tolerance anywhere.
pub fn rank_exact(m: &HermitianMatrix) -> Result<usize> {
    match m {
        HermitianMatrix::Exact(m) => Ok(rank_exact_matrix(m)),
        HermitianMatrix::Approx(_) => Err(Error::ExpectedExactEntries),
    }
}

fn rank_exact_matrix(m: &ExactMatrix) -> usize {
    let n = m.dim();
    let mut a = m.clone();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot_row) = (rank..n).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            for j in 0..n {
                let tmp = a.get(rank, j).clone();
                a.set(rank, j, a.get(pivot_row, j).clone());
                a.set(pivot_row, j, tmp);
            }
        }
        let inv = a.get(rank, col).inv();
        for r in (rank + 1)..n {
            if a.get(r, col).is_zero() {
                continue;
            }
            let factor = a.get(r, col) * &inv;
            for j in col..n {
                let delta = &factor * a.get(rank, j);
                let updated = a.get(r, j) - &delta;
                a.set(r, j, updated);
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    rank
}

/// Count of singular values above `tol * n * max|entry|`. For a Hermitian
/// matrix the singular values are the absolute eigenvalues.
pub fn rank_approx(m: &HermitianMatrix, tol: f64) -> Result<usize> {
    let approx = match m {
        HermitianMatrix::Exact(m) => m.to_complex(),
        HermitianMatrix::Approx(m) => m.clone(),
    };
    approx.check_finite()?;
    let threshold = tol * approx.dim() as f64 * approx.max_entry_norm();
    Ok(approx
        .eigenvalues()
        .iter()
        .filter(|ev| ev.abs() > threshold)
        .count())
}

/// Inertia of an exact Hermitian matrix by congruence diagonalization.
///
/// Every step is a congruence A -> S* A S: swap a nonzero diagonal entry into
/// pivot position, or when the whole active diagonal is zero, fold a nonzero
/// off-diagonal entry onto the diagonal (row_k += z row_j with the mirrored
/// column update yields a diagonal entry 2|a_kj|^2 > 0).
pub fn inertia_exact(m: &ExactMatrix) -> Inertia {
    let n = m.dim();
    let mut a = m.clone();
    let mut positive = 0;
    let mut negative = 0;

    for k in 0..n {
        if a.get(k, k).is_zero() {
            if let Some(j) = ((k + 1)..n).find(|&j| !a.get(j, j).is_zero()) {
                swap_symmetric(&mut a, k, j);
            } else if let Some(j) = ((k + 1)..n).find(|&j| !a.get(k, j).is_zero()) {
                fold_offdiagonal(&mut a, k, j);
            } else {
                // Row k is zero on the active block: a zero eigenvalue.
                continue;
            }
        }
        let pivot = a.get(k, k).clone();
        debug_assert!(pivot.im.is_zero(), "diagonal entries stay real");
        if pivot.re.is_positive() {
            positive += 1;
        } else {
            negative += 1;
        }
        for r in (k + 1)..n {
            if a.get(r, k).is_zero() {
                continue;
            }
            let factor = a.get(r, k) * &pivot.inv();
            // row_r -= factor * row_k
            for j in k..n {
                let delta = &factor * a.get(k, j);
                let updated = a.get(r, j) - &delta;
                a.set(r, j, updated);
            }
            // col_r -= conj(factor) * col_k
            let conj_factor = factor.conj();
            for i in k..n {
                let delta = &conj_factor * a.get(i, k);
                let updated = a.get(i, r) - &delta;
                a.set(i, r, updated);
            }
        }
    }

    Inertia {
        positive,
        negative,
        zero: n - positive - negative,
    }
}

fn swap_symmetric(a: &mut ExactMatrix, k: usize, j: usize) {
    let n = a.dim();
    for col in 0..n {
        let tmp = a.get(k, col).clone();
        a.set(k, col, a.get(j, col).clone());
        a.set(j, col, tmp);
    }
    for row in 0..n {
        let tmp = a.get(row, k).clone();
        a.set(row, k, a.get(row, j).clone());
        a.set(row, j, tmp);
    }
}

/// row_k += z * row_j and col_k += conj(z) * col_j with z = a(k, j), giving
/// a(k, k) = 2|a(k, j)|^2 when both touched diagonal entries were zero.
fn fold_offdiagonal(a: &mut ExactMatrix, k: usize, j: usize) {
    let n = a.dim();
    let z = a.get(k, j).clone();
    for col in 0..n {
        let delta = &z * a.get(j, col);
        let updated = a.get(k, col) + &delta;
        a.set(k, col, updated);
    }
    let zc = z.conj();
    for row in 0..n {
        let delta = &zc * a.get(row, j);
        let updated = a.get(row, k) + &delta;
        a.set(row, k, updated);
    }
}

fn inertia_approx(m: &ApproxMatrix, tol: f64) -> Result<Inertia> {
    m.check_finite()?;
    m.check_hermitian()?;
    let threshold = tol * m.dim() as f64 * m.max_entry_norm();
    let mut inertia = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for ev in m.eigenvalues() {
        if ev > threshold {
            inertia.positive += 1;
        } else if ev < -threshold {
            inertia.negative += 1;
        } else {
            inertia.zero += 1;
        }
    }
    Ok(inertia)
}

//! Gain products of cycles, their five-way classification, and closed-form
//! inertia for cycles and paths.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gain::{GaussRat, UnitGain};
use crate::graph::GainGraph;
use crate::linalg::Inertia;

/// Classification of a cycle of length l with gain product g:
///
/// - `A`: l even and g = (-1)^{l/2}
/// - `B`: l even and g != (-1)^{l/2}
/// - `C`: l odd and Re((-1)^{(l-1)/2} g) > 0
/// - `D`: l odd and Re((-1)^{(l-1)/2} g) < 0
/// - `E`: l odd and Re((-1)^{(l-1)/2} g) = 0
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CycleType {
    A,
    B,
    C,
    D,
    E,
}

impl CycleType {
    pub fn requires_even_length(&self) -> bool {
        matches!(self, CycleType::A | CycleType::B)
    }

    pub fn as_char(&self) -> char {
        match self {
            CycleType::A => 'A',
            CycleType::B => 'B',
            CycleType::C => 'C',
            CycleType::D => 'D',
            CycleType::E => 'E',
        }
    }
}

impl std::fmt::Display for CycleType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One cycle together with its gain product and classification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleRecord {
    pub vertices: Vec<usize>,
    pub length: usize,
    pub gain_product: UnitGain,
    pub cycle_type: CycleType,
}

/// Product of directed gains along the traversal v0 -> v1 -> ... -> v0.
/// Reversing the orientation conjugates the result.
pub fn cycle_gain(g: &GainGraph, cycle: &[usize]) -> Result<UnitGain> {
    let l = cycle.len();
    if l < 3 {
        return Err(Error::NotACycle(format!("sequence of length {l}")));
    }
    let mut seen = std::collections::HashSet::new();
    for &v in cycle {
        if !seen.insert(v) {
            return Err(Error::NotACycle(format!("vertex {v} repeats")));
        }
    }
    let mut product = match g.gain_mode() {
        crate::graph::GainMode::Exact => UnitGain::one(),
        crate::graph::GainMode::Approx => UnitGain::from_angle(0.0),
    };
    for i in 0..l {
        let (a, b) = (cycle[i], cycle[(i + 1) % l]);
        let Some(gain) = g.oriented_gain(a, b) else {
            return Err(Error::NotACycle(format!("missing edge ({a}, {b})")));
        };
        product = product.product(&gain)?;
    }
    Ok(product)
}

/// Builds full cycle records for vertex sequences found by the cycle scan.
pub fn analyze_cycles(g: &GainGraph, sequences: &[Vec<usize>], tol: f64) -> Result<Vec<CycleRecord>> {
    sequences
        .iter()
        .map(|seq| {
            let gain_product = cycle_gain(g, seq)?;
            let cycle_type = classify_cycle(seq.len(), &gain_product, tol)?;
            Ok(CycleRecord {
                vertices: seq.clone(),
                length: seq.len(),
                gain_product,
                cycle_type,
            })
        })
        .collect()
}

/// Sign of (-1)^k as an exact Gaussian rational.
fn alternating_sign(k: usize) -> GaussRat {
    if k % 2 == 0 {
        GaussRat::one()
    } else {
        GaussRat::from_ints(-1, 0)
    }
}

/// Classifies a cycle from its length and gain product.
///
/// Exact gains classify exactly. Approximate gains compare with `tol` and
/// refuse to answer near a boundary: within `tol` of the even-length target
/// value, or with |Re| below `tol` in the odd case, only exact arithmetic
/// could decide, so an ambiguity error is raised instead of a silent guess.
pub fn classify_cycle(length: usize, gain_product: &UnitGain, tol: f64) -> Result<CycleType> {
    if length < 3 {
        return Err(Error::CycleTooShort(length));
    }
    match gain_product {
        UnitGain::Exact(z) => {
            if length % 2 == 0 {
                let target = alternating_sign(length / 2);
                if *z == target {
                    Ok(CycleType::A)
                } else {
                    Ok(CycleType::B)
                }
            } else {
                let signed = &alternating_sign((length - 1) / 2) * z;
                if signed.re.is_zero() {
                    Ok(CycleType::E)
                } else if signed.re.is_positive() {
                    Ok(CycleType::C)
                } else {
                    Ok(CycleType::D)
                }
            }
        }
        UnitGain::Approx(_) => {
            let z = gain_product.to_complex64();
            if length % 2 == 0 {
                let target = if (length / 2) % 2 == 0 { 1.0 } else { -1.0 };
                let dist = (z - num_complex::Complex64::new(target, 0.0)).norm();
                if dist < tol {
                    Err(Error::AmbiguousTypeBoundary {
                        quantity: "distance to even-length target",
                        value: dist,
                        tol,
                    })
                } else {
                    Ok(CycleType::B)
                }
            } else {
                let sign = if ((length - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
                let re = sign * z.re;
                if re.abs() < tol {
                    Err(Error::AmbiguousTypeBoundary {
                        quantity: "Re of signed gain product",
                        value: re,
                        tol,
                    })
                } else if re > 0.0 {
                    Ok(CycleType::C)
                } else {
                    Ok(CycleType::D)
                }
            }
        }
    }
}

/// Inertia of a cycle of the given length and type:
/// A -> ((l-2)/2, (l-2)/2), B -> (l/2, l/2), C -> ((l+1)/2, (l-1)/2),
/// D -> ((l-1)/2, (l+1)/2), E -> ((l-1)/2, (l-1)/2).
pub fn cycle_inertia_closed_form(length: usize, cycle_type: CycleType) -> Result<Inertia> {
    if length < 3 {
        return Err(Error::CycleTooShort(length));
    }
    let even = length % 2 == 0;
    if cycle_type.requires_even_length() != even {
        return Err(Error::TypeParityMismatch {
            cycle_type: cycle_type.as_char(),
            required: if cycle_type.requires_even_length() {
                "even"
            } else {
                "odd"
            },
            length,
        });
    }
    let (positive, negative) = match cycle_type {
        CycleType::A => ((length - 2) / 2, (length - 2) / 2),
        CycleType::B => (length / 2, length / 2),
        CycleType::C => ((length + 1) / 2, (length - 1) / 2),
        CycleType::D => ((length - 1) / 2, (length + 1) / 2),
        CycleType::E => ((length - 1) / 2, (length - 1) / 2),
    };
    Ok(Inertia {
        positive,
        negative,
        zero: length - positive - negative,
    })
}

/// Rank of a path on l vertices: l - 1 when odd, l when even. Gains do not
/// matter on acyclic graphs.
pub fn path_rank(length: usize) -> usize {
    if length % 2 == 1 {
        length - 1
    } else {
        length
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{adjacency_matrix, DEFAULT_TOL};

    fn cycle_graph(gains: Vec<UnitGain>) -> GainGraph {
        let l = gains.len();
        let edges = gains
            .into_iter()
            .enumerate()
            .map(|(i, gain)| (i, (i + 1) % l, gain))
            .collect();
        GainGraph::new(l, edges).unwrap()
    }

    #[test]
    fn gain_product_and_reversal() {
        let g = cycle_graph(vec![UnitGain::one(), UnitGain::one(), UnitGain::i()]);
        let forward = cycle_gain(&g, &[0, 1, 2]).unwrap();
        assert_eq!(forward, UnitGain::i());
        let reverse = cycle_gain(&g, &[2, 1, 0]).unwrap();
        assert_eq!(reverse, UnitGain::minus_i());

        let all_one = cycle_graph(vec![UnitGain::one(); 6]);
        assert_eq!(cycle_gain(&all_one, &[0, 1, 2, 3, 4, 5]).unwrap(), UnitGain::one());
    }

    #[test]
    fn non_cycles_rejected() {
        let g = cycle_graph(vec![UnitGain::one(); 4]);
        assert!(cycle_gain(&g, &[0, 1, 3]).is_err()); // missing edge (1,3)
        assert!(cycle_gain(&g, &[0, 1]).is_err());
        assert!(cycle_gain(&g, &[0, 1, 1]).is_err());
    }

    #[test]
    fn classification_examples() {
        // l = 4, product 1: (-1)^2 = 1.
        assert_eq!(
            classify_cycle(4, &UnitGain::one(), DEFAULT_TOL).unwrap(),
            CycleType::A
        );
        // l = 3, product 1: Re(-1) < 0.
        assert_eq!(
            classify_cycle(3, &UnitGain::one(), DEFAULT_TOL).unwrap(),
            CycleType::D
        );
        // l = 3, product i: Re(-i) = 0.
        assert_eq!(
            classify_cycle(3, &UnitGain::i(), DEFAULT_TOL).unwrap(),
            CycleType::E
        );
        // l = 4, product -1.
        assert_eq!(
            classify_cycle(4, &UnitGain::minus_one(), DEFAULT_TOL).unwrap(),
            CycleType::B
        );
        // l = 5, product 1: Re(1) > 0.
        assert_eq!(
            classify_cycle(5, &UnitGain::one(), DEFAULT_TOL).unwrap(),
            CycleType::C
        );
    }

    #[test]
    fn approx_boundary_is_flagged() {
        // Angle pi/2 would be exactly Type E for a triangle.
        let g = UnitGain::from_angle(std::f64::consts::FRAC_PI_2);
        assert!(matches!(
            classify_cycle(3, &g, DEFAULT_TOL),
            Err(Error::AmbiguousTypeBoundary { .. })
        ));
        // Angle 0 for an even cycle with target 1 is ambiguous for Type A.
        let g = UnitGain::from_angle(0.0);
        assert!(matches!(
            classify_cycle(4, &g, DEFAULT_TOL),
            Err(Error::AmbiguousTypeBoundary { .. })
        ));
        // Far from any boundary the classification succeeds.
        let g = UnitGain::from_angle(1.0);
        assert_eq!(classify_cycle(4, &g, DEFAULT_TOL).unwrap(), CycleType::B);
        assert_eq!(classify_cycle(5, &g, DEFAULT_TOL).unwrap(), CycleType::C);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            cycle_inertia_closed_form(4, CycleType::A).unwrap(),
            Inertia {
                positive: 1,
                negative: 1,
                zero: 2
            }
        );
        assert_eq!(
            cycle_inertia_closed_form(3, CycleType::D).unwrap(),
            Inertia {
                positive: 1,
                negative: 2,
                zero: 0
            }
        );
        assert_eq!(
            cycle_inertia_closed_form(5, CycleType::E).unwrap(),
            Inertia {
                positive: 2,
                negative: 2,
                zero: 1
            }
        );
        assert!(matches!(
            cycle_inertia_closed_form(3, CycleType::A),
            Err(Error::TypeParityMismatch { .. })
        ));
        assert!(matches!(
            cycle_inertia_closed_form(4, CycleType::E),
            Err(Error::TypeParityMismatch { .. })
        ));
    }

    #[test]
    fn path_rank_examples() {
        assert_eq!(path_rank(5), 4);
        assert_eq!(path_rank(6), 6);
        assert_eq!(path_rank(1), 0);
    }

    #[test]
    fn closed_form_matches_linear_algebra_for_exact_samples() {
        // Each reachable type at a few lengths, cross-checked against the
        // exact eigenvalue sign counts.
        for l in 3..=9usize {
            let products: Vec<UnitGain> = if l % 2 == 0 {
                vec![
                    UnitGain::one(),
                    UnitGain::minus_one(),
                    UnitGain::i(),
                    UnitGain::minus_i(),
                ]
            } else {
                vec![UnitGain::one(), UnitGain::minus_one(), UnitGain::i()]
            };
            for product in products {
                let mut gains = vec![UnitGain::one(); l - 1];
                gains.push(product.clone());
                // Stored closing edge (0, l-1) must carry the conjugate so the
                // directed traversal 0 -> 1 -> ... -> l-1 -> 0 multiplies to
                // `product`.
                let mut edges: Vec<(usize, usize, UnitGain)> = (0..l - 1)
                    .map(|i| (i, i + 1, gains[i].clone()))
                    .collect();
                edges.push((0, l - 1, gains[l - 1].conjugate()));
                let g = GainGraph::new(l, edges).unwrap();
                let seq: Vec<usize> = (0..l).collect();
                let measured = cycle_gain(&g, &seq).unwrap();
                assert_eq!(measured, product);
                let ty = classify_cycle(l, &measured, DEFAULT_TOL).unwrap();
                let closed = cycle_inertia_closed_form(l, ty).unwrap();
                let computed = adjacency_matrix(&g).inertia(DEFAULT_TOL).unwrap();
                assert_eq!(closed, computed, "l = {l}, type {ty}");
            }
        }
    }
}

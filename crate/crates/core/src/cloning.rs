//! Copier unitaries and how well they copy.
//!
//! A copier for `φ = (a, b)` is any 4×4 unitary sending `φ ⊗ |0⟩ = (a, 0, b, 0)` to
//! `φ ⊗ φ = (a², ab, ab, b²)`. [`copier_for`] builds one from two heap transforms;
//! the hand-built matrices below are fixed alternatives for the plus/minus pair.

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::heap::transfer_unitary;
use crate::matrix::{UnitaryMatrix, UNITARY_TOL};
use crate::state::{Qubit, StateVector};

/// Fidelity at or above `1 − EXACT_TOL` counts as an exact copy.
pub const EXACT_TOL: f64 = 1e-9;

pub fn doubled_state(q: Qubit) -> StateVector {
    q.to_state().tensor(&q.to_state())
}

/// `φ ⊗ |0⟩`
pub fn copier_input(q: Qubit) -> StateVector {
    q.to_state()
        .tensor(&StateVector::basis_state(1, 0).expect("1-qubit basis"))
}

/// Transfer unitary from `φ ⊗ |0⟩` to `φ ⊗ φ`.
pub fn copier_for(q: Qubit) -> UnitaryMatrix {
    transfer_unitary(copier_input(q).amplitudes(), doubled_state(q).amplitudes())
        .expect("copier endpoints are unit 4-vectors")
}

/// Two-qubit CNOT with qubit 1 as control.
pub fn cnot_matrix() -> UnitaryMatrix {
    UnitaryMatrix::permutation(&[0, 1, 3, 2]).expect("valid permutation")
}

/// `(1/√2)·[1 0 0 1; 0 1 1 0; 0 −1 1 0; 1 0 0 −1]`, copies both `(|0⟩ ± |1⟩)/√2`.
pub fn hadamard_copier() -> UnitaryMatrix {
    let h = FRAC_1_SQRT_2;
    UnitaryMatrix::from_array([
        [h, 0.0, 0.0, h],
        [0.0, h, h, 0.0],
        [0.0, -h, h, 0.0],
        [h, 0.0, 0.0, -h],
    ])
}

/// `(1/√2)·[1 0 1 0; 0 1 0 1; 0 −1 0 1; 1 0 −1 0]`, sends `(1,0,0,1)` to `(1,1,1,1)/√2`.
pub fn hand_built_a() -> UnitaryMatrix {
    let h = FRAC_1_SQRT_2;
    UnitaryMatrix::from_array([
        [h, 0.0, h, 0.0],
        [0.0, h, 0.0, h],
        [0.0, -h, 0.0, h],
        [h, 0.0, -h, 0.0],
    ])
}

/// 2×2 Hadamard.
pub fn hadamard_2() -> UnitaryMatrix {
    let h = FRAC_1_SQRT_2;
    UnitaryMatrix::from_array([[h, h], [h, -h]])
}

/// `(1/√2)·[1 1; −1 1] = diag(1, −1)·H₂`.
pub fn rotation_2() -> UnitaryMatrix {
    let h = FRAC_1_SQRT_2;
    UnitaryMatrix::from_array([[h, h], [-h, h]])
}

/// Core factor `H₂ ⊕ A₂` shared by both hand-built matrices.
pub fn hand_built_core() -> UnitaryMatrix {
    hadamard_2().direct_sum(&rotation_2())
}

/// Row permutation `(1,2,3)` used on the left of both factorizations.
pub fn cycle_left() -> UnitaryMatrix {
    UnitaryMatrix::permutation(&[0, 2, 3, 1]).expect("valid permutation")
}

/// `A = cycle_left · (H₂ ⊕ A₂) · swap(1,2)`.
pub fn hand_built_a_factors() -> [UnitaryMatrix; 3] {
    [
        cycle_left(),
        hand_built_core(),
        UnitaryMatrix::permutation(&[0, 2, 1, 3]).expect("valid permutation"),
    ]
}

/// `U = cycle_left · (H₂ ⊕ A₂) · cycle(1,3,2)`.
pub fn hadamard_copier_factors() -> [UnitaryMatrix; 3] {
    [
        cycle_left(),
        hand_built_core(),
        UnitaryMatrix::permutation(&[0, 3, 1, 2]).expect("valid permutation"),
    ]
}

/// CNOT-style permutation swapping basis states 2 and 3.
pub fn swap_last_pair() -> UnitaryMatrix {
    cnot_matrix()
}

pub fn product(factors: &[UnitaryMatrix]) -> Result<UnitaryMatrix> {
    let (first, rest) = factors.split_first().ok_or(Error::BadLength(0))?;
    rest.iter().try_fold(first.clone(), |acc, f| acc.mul(f))
}

/// True iff `copier = a · p` entrywise within 1e−12.
pub fn relation_holds(copier: &UnitaryMatrix, a: &UnitaryMatrix, p: &UnitaryMatrix) -> bool {
    a.mul(p)
        .and_then(|ap| copier.max_abs_diff(&ap))
        .map(|d| d <= 1e-12)
        .unwrap_or(false)
}

/// The plus/minus copier equals the hand-built `A` followed by the 2↔3 swap.
pub fn plus_minus_relation_check() -> bool {
    relation_holds(&hadamard_copier(), &hand_built_a(), &swap_last_pair())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CopierReport {
    pub copier: UnitaryMatrix,
    pub built_for: Option<Qubit>,
    pub tested_on: Qubit,
    /// `⟨φ⊗φ | U(φ⊗|0⟩)⟩`
    pub overlap: f64,
    /// Squared overlap.
    pub fidelity: f64,
    pub exact: bool,
}

pub fn clone_fidelity(copier: &UnitaryMatrix, test: Qubit) -> Result<CopierReport> {
    if copier.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: copier.dim(),
        });
    }
    let r = copier.unitarity_residual();
    if r > UNITARY_TOL || !r.is_finite() {
        return Err(Error::NotUnitary(r));
    }
    let out = copier.apply(copier_input(test).amplitudes())?;
    let ideal = doubled_state(test);
    let overlap: f64 = out.iter().zip(ideal.amplitudes()).map(|(x, y)| x * y).sum();
    let fidelity = (overlap * overlap).min(1.0);
    Ok(CopierReport {
        copier: copier.clone(),
        built_for: None,
        tested_on: test,
        overlap,
        fidelity,
        exact: fidelity >= 1.0 - EXACT_TOL,
    })
}

/// Report for the heap-transform copier built for `source`, tested on `test`.
pub fn copier_report(source: Qubit, test: Qubit) -> CopierReport {
    let mut r = clone_fidelity(&copier_for(source), test).expect("heap copier is a 4x4 unitary");
    r.built_for = Some(source);
    r
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepPoint {
    pub degrees: f64,
    pub fidelity: f64,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    pub points: Vec<SweepPoint>,
}

impl Sweep {
    pub fn exact_degrees(&self) -> Vec<f64> {
        self.points.iter().filter(|p| p.exact).map(|p| p.degrees).collect()
    }
}

/// Fidelity of `copier` on `(cos t, sin t)` for `t = 2πk/grid`, `k = 0..grid`.
pub fn fidelity_sweep(copier: &UnitaryMatrix, grid: usize) -> Result<Sweep> {
    if grid < 2 {
        return Err(Error::BadLength(grid));
    }
    let points = (0..grid)
        .map(|k| {
            let t = TAU * k as f64 / grid as f64;
            let r = clone_fidelity(copier, Qubit::from_angle(t))?;
            Ok(SweepPoint {
                degrees: t.to_degrees(),
                fidelity: r.fidelity,
                exact: r.exact,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sweep { points })
}

/// Sweep of the heap-transform copier built for `source`.
pub fn no_cloning_sweep(source: Qubit, grid: usize) -> Result<Sweep> {
    fidelity_sweep(&copier_for(source), grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn doubled_examples() {
        let q = Qubit::new(0.6, 0.8).unwrap();
        let d = doubled_state(q);
        assert!(close(d.amplitudes(), &[9.0 / 25.0, 12.0 / 25.0, 12.0 / 25.0, 16.0 / 25.0], 1e-15));
        assert_eq!(doubled_state(Qubit::zero()).amplitudes(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn copier_for_basis_and_plus() {
        let u = copier_for(Qubit::zero());
        assert!(close(&u.apply(&[1.0, 0.0, 0.0, 0.0]).unwrap(), &[1.0, 0.0, 0.0, 0.0], 1e-15));
        let u = copier_for(Qubit::plus());
        let h = FRAC_1_SQRT_2;
        assert!(close(&u.apply(&[h, 0.0, h, 0.0]).unwrap(), &[0.5; 4], 1e-12));
    }

    #[test]
    fn hadamard_copier_actions() {
        let u = hadamard_copier();
        let h = FRAC_1_SQRT_2;
        assert!(close(&u.apply(&[h, 0.0, h, 0.0]).unwrap(), &[0.5; 4], 1e-15));
        assert!(close(&u.apply(&[h, 0.0, -h, 0.0]).unwrap(), &[0.5, -0.5, -0.5, 0.5], 1e-15));
        assert!(close(&u.apply(&[1.0, 0.0, 0.0, 0.0]).unwrap(), &[h, 0.0, 0.0, h], 1e-15));
    }

    #[test]
    fn hadamard_copier_determinant_is_minus_one() {
        assert!((hadamard_copier().det() + 1.0).abs() < 1e-12);
        assert!((hand_built_a().det() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn relation_check_and_controls() {
        assert!(plus_minus_relation_check());
        let bumped = hand_built_a().with_entry(0, 0, hand_built_a().get(0, 0) + 1e-6);
        assert!(!relation_holds(&hadamard_copier(), &bumped, &swap_last_pair()));
        assert!(!relation_holds(&hadamard_copier(), &hand_built_a(), &UnitaryMatrix::identity(4)));
    }

    #[test]
    fn fidelity_examples() {
        let r = clone_fidelity(&cnot_matrix(), Qubit::plus()).unwrap();
        assert!((r.fidelity - 0.5).abs() < 1e-12 && !r.exact);
        let q = Qubit::new(0.6, 0.8).unwrap();
        assert!(clone_fidelity(&copier_for(q), q).unwrap().exact);
        assert!(clone_fidelity(&hadamard_copier(), Qubit::minus()).unwrap().exact);
        let r = clone_fidelity(&hadamard_copier(), Qubit::zero()).unwrap();
        assert!((r.fidelity - 0.5).abs() < 1e-12);
    }

    #[test]
    fn fidelity_rejects_bad_copier() {
        assert!(matches!(
            clone_fidelity(&UnitaryMatrix::identity(2), Qubit::zero()),
            Err(Error::DimensionMismatch { .. })
        ));
        let skewed = UnitaryMatrix::identity(4).with_entry(0, 1, 0.5);
        assert!(matches!(clone_fidelity(&skewed, Qubit::zero()), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn hadamard_copier_sweep_hits_only_plus_minus() {
        let s = fidelity_sweep(&hadamard_copier(), 360).unwrap();
        assert_eq!(s.points.len(), 360);
        let hits: Vec<i64> = s.exact_degrees().iter().map(|d| d.round() as i64).collect();
        assert_eq!(hits, vec![45, 135, 225, 315]);
    }

    #[test]
    fn sweep_from_zero_source() {
        let s = no_cloning_sweep(Qubit::zero(), 8).unwrap();
        assert!(s.points[0].exact);
        assert!(fidelity_sweep(&hadamard_copier(), 1).is_err());
    }
}

//! Heap transforms: chains of Givens rotations generated by a unit vector.
//!
//! The chain for a generator `g` of length N rotates along the pivot path
//! `(0,1), (0,2), …, (0,N−1)`. Each step folds the next component of the running
//! vector into component 0, so the whole chain sends `g` to `e₀`. Two such chains give
//! a transfer unitary `H_bᵀ·H_a` carrying `a` onto `b`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;
use crate::state::{Qubit, NORM_TOL};

/// Rotation acting on coordinates `(p, q)`:
/// `x_p ← cos θ·x_p − sin θ·x_q`, `x_q ← sin θ·x_p + cos θ·x_q`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GivensRotation {
    p: usize,
    q: usize,
    angle: f64,
}

impl GivensRotation {
    pub fn new(p: usize, q: usize, angle: f64) -> Result<Self> {
        if p >= q {
            return Err(Error::BadPlane { p, q, dim: 0 });
        }
        Ok(Self { p, q, angle })
    }

    pub fn plane(&self) -> (usize, usize) {
        (self.p, self.q)
    }

    /// Radians.
    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn degrees(&self) -> f64 {
        self.angle.to_degrees()
    }

    #[inline]
    fn rotate(&self, v: &mut [f64], sign: f64) {
        let (s, c) = (sign * self.angle).sin_cos();
        let (x, y) = (v[self.p], v[self.q]);
        v[self.p] = c * x - s * y;
        v[self.q] = s * x + c * y;
    }

    /// Dense N×N factor of this rotation.
    pub fn matrix(&self, dim: usize) -> Result<UnitaryMatrix> {
        if self.q >= dim {
            return Err(Error::BadPlane { p: self.p, q: self.q, dim });
        }
        let (s, c) = self.angle.sin_cos();
        let mut m = DMatrix::identity(dim, dim);
        m[(self.p, self.p)] = c;
        m[(self.p, self.q)] = -s;
        m[(self.q, self.p)] = s;
        m[(self.q, self.q)] = c;
        Ok(UnitaryMatrix::from_dmatrix(m))
    }
}

/// Rotation angle that maps `(x, y)` to `(√(x²+y²), 0)`.
///
/// Equal to `−atan(y/x)` for `x > 0`; the two-argument form keeps the pivot
/// nonnegative in every quadrant, including `x = 0` where it gives `−sign(y)·π/2`.
/// `(0, 0)` maps to angle 0.
pub fn givens_angle(x: f64, y: f64) -> f64 {
    if y == 0.0 && x >= 0.0 {
        return 0.0;
    }
    -y.atan2(x)
}

/// Ordered rotation list; the first rotation acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct RotationChain {
    dim: usize,
    rotations: Vec<GivensRotation>,
}

impl RotationChain {
    pub fn new(dim: usize, rotations: Vec<GivensRotation>) -> Result<Self> {
        if let Some(r) = rotations.iter().find(|r| r.q >= dim) {
            return Err(Error::BadPlane { p: r.p, q: r.q, dim });
        }
        Ok(Self { dim, rotations })
    }

    pub fn empty(dim: usize) -> Self {
        Self {
            dim,
            rotations: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rotations(&self) -> &[GivensRotation] {
        &self.rotations
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.rotations.iter().map(GivensRotation::degrees).collect()
    }

    fn check_len(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                actual: v.len(),
            });
        }
        Ok(())
    }

    /// Applies the rotations in order, touching two coordinates per step.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v)?;
        let mut out = v.to_vec();
        for r in &self.rotations {
            r.rotate(&mut out, 1.0);
        }
        Ok(out)
    }

    /// Applies the transpose: rotations in reverse order with negated angles.
    pub fn apply_inverse(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check_len(v)?;
        let mut out = v.to_vec();
        for r in self.rotations.iter().rev() {
            r.rotate(&mut out, -1.0);
        }
        Ok(out)
    }

    /// Dense factors in application order.
    pub fn factors(&self) -> Vec<UnitaryMatrix> {
        self.rotations
            .iter()
            .map(|r| r.matrix(self.dim).expect("planes validated on construction"))
            .collect()
    }

    /// Product `R_k ⋯ R_2 R_1` of the factors.
    pub fn matrix(&self) -> UnitaryMatrix {
        let mut m = DMatrix::identity(self.dim, self.dim);
        for f in self.factors() {
            m = f.as_dmatrix() * m;
        }
        UnitaryMatrix::from_dmatrix(m)
    }

    pub fn to_document(&self) -> ChainDocument {
        ChainDocument {
            dim: self.dim,
            rotations: self
                .rotations
                .iter()
                .map(|r| RotationEntry {
                    plane: [r.p, r.q],
                    degrees: r.degrees(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("chain document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ChainDocument = serde_json::from_str(text)?;
        doc.into_chain()
    }
}

/// `{"dim": N, "rotations": [{"plane": [p, q], "degrees": d}, ...]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainDocument {
    pub dim: usize,
    pub rotations: Vec<RotationEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotationEntry {
    pub plane: [usize; 2],
    pub degrees: f64,
}

impl ChainDocument {
    pub fn into_chain(self) -> Result<RotationChain> {
        let rotations = self
            .rotations
            .iter()
            .map(|e| GivensRotation::new(e.plane[0], e.plane[1], e.degrees.to_radians()))
            .collect::<Result<Vec<_>>>()?;
        RotationChain::new(self.dim, rotations)
    }
}

fn check_unit(v: &[f64]) -> Result<()> {
    let sq: f64 = v.iter().map(|x| x * x).sum();
    if (sq - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized {
            norm: sq.sqrt(),
            tol: NORM_TOL,
        });
    }
    Ok(())
}

/// Heap-transform chain generated by a unit vector; sends the generator to `e₀`.
///
/// Always yields `N − 1` rotations; components already zero get a zero-angle factor.
pub fn dsiht_chain(generator: &[f64]) -> Result<RotationChain> {
    if generator.is_empty() {
        return Err(Error::BadLength(0));
    }
    check_unit(generator)?;
    let mut pivot = generator[0];
    let mut rotations = Vec::with_capacity(generator.len() - 1);
    for (q, &y) in generator.iter().enumerate().skip(1) {
        let angle = givens_angle(pivot, y);
        rotations.push(GivensRotation { p: 0, q, angle });
        pivot = pivot.hypot(y);
    }
    Ok(RotationChain {
        dim: generator.len(),
        rotations,
    })
}

/// Source and target chains of the transfer `source → target`.
pub fn transfer_chains(source: &[f64], target: &[f64]) -> Result<(RotationChain, RotationChain)> {
    if source.len() != target.len() {
        return Err(Error::DimensionMismatch {
            expected: source.len(),
            actual: target.len(),
        });
    }
    Ok((dsiht_chain(source)?, dsiht_chain(target)?))
}

/// `U = H_targetᵀ · H_source`, so that `U·source = target`.
pub fn transfer_unitary(source: &[f64], target: &[f64]) -> Result<UnitaryMatrix> {
    let (hs, ht) = transfer_chains(source, target)?;
    ht.matrix().transpose().mul(&hs.matrix())
}

/// 2×2 transfer between single-qubit states.
pub fn single_qubit_transfer(source: Qubit, target: Qubit) -> UnitaryMatrix {
    transfer_unitary(&[source.a(), source.b()], &[target.a(), target.b()])
        .expect("qubits are unit 2-vectors")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn deg(x: f64, y: f64) -> f64 {
        givens_angle(x, y).to_degrees()
    }

    #[test]
    fn angle_examples() {
        assert!((deg(0.5, 0.5) + 45.0).abs() < 1e-12);
        assert!((deg(0.6, 0.8) + 53.130_102_354).abs() < 1e-8);
        assert_eq!(deg(2.0, 0.0), 0.0);
        assert!((deg(0.8660, 0.5) + 30.0).abs() < 1e-3);
        assert_eq!(givens_angle(0.0, 0.0), 0.0);
    }

    #[test]
    fn angle_zero_x_keeps_pivot_positive() {
        for (x, y) in [(0.0, 1.0), (0.0, -1.0), (-1.0, 0.0), (-0.3, 0.4), (-0.3, -0.4)] {
            let r = GivensRotation { p: 0, q: 1, angle: givens_angle(x, y) };
            let mut v = [x, y];
            r.rotate(&mut v, 1.0);
            let n = f64::hypot(x, y);
            assert!((v[0] - n).abs() < 1e-15 && v[1].abs() < 1e-15, "{x},{y} -> {v:?}");
        }
    }

    #[test]
    fn bell_generator_has_single_rotation() {
        let a = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        let chain = dsiht_chain(&a).unwrap();
        let d = chain.degrees();
        assert_eq!(&d[..2], &[0.0, 0.0]);
        assert!((d[2] + 45.0).abs() < 1e-12);
        let out = chain.apply(&a).unwrap();
        assert!((out[0] - 1.0).abs() < 1e-15 && out[1..].iter().all(|v| v.abs() < 1e-15));
    }

    #[test]
    fn e0_generator_is_identity() {
        let chain = dsiht_chain(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(chain.degrees().iter().all(|&d| d == 0.0));
        assert_eq!(chain.matrix(), UnitaryMatrix::identity(4));
    }

    #[test]
    fn non_unit_generator_rejected() {
        assert!(matches!(dsiht_chain(&[1.0, 1.0]), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn empty_chain_is_identity() {
        let c = RotationChain::empty(3);
        let v = [0.1, 0.2, 0.3];
        assert_eq!(c.apply(&v).unwrap(), v.to_vec());
        assert_eq!(c.apply_inverse(&v).unwrap(), v.to_vec());
        assert_eq!(c.matrix(), UnitaryMatrix::identity(3));
        assert!(c.apply(&[1.0]).is_err());
    }

    #[test]
    fn inverse_rebuilds_generator() {
        let b = [0.5; 4];
        let chain = dsiht_chain(&b).unwrap();
        let back = chain.apply_inverse(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        for (x, y) in back.iter().zip(&b) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn bad_planes_rejected() {
        assert!(GivensRotation::new(2, 1, 0.0).is_err());
        let r = GivensRotation::new(0, 3, 0.1).unwrap();
        assert!(RotationChain::new(3, vec![r]).is_err());
        assert!(r.matrix(3).is_err());
    }

    #[test]
    fn qubit_transfer_hits_target() {
        let src = Qubit::new(0.6, 0.8).unwrap();
        let dst = Qubit::new(0.8, 0.6).unwrap();
        let u = single_qubit_transfer(src, dst);
        let out = u.apply(&[0.6, 0.8]).unwrap();
        assert!((out[0] - 0.8).abs() < 1e-12 && (out[1] - 0.6).abs() < 1e-12);
        let to_zero = single_qubit_transfer(src, Qubit::zero());
        let out = to_zero.apply(&[0.6, 0.8]).unwrap();
        assert!((out[0] - 1.0).abs() < 1e-12 && out[1].abs() < 1e-12);
        let same = single_qubit_transfer(src, src);
        assert!(same.max_abs_diff(&UnitaryMatrix::identity(2)).unwrap() < 1e-15);
    }

    #[test]
    fn chain_json_round_trip() {
        let chain = dsiht_chain(&[0.36, 0.48, 0.48, 0.64]).unwrap();
        let back = RotationChain::from_json(&chain.to_json()).unwrap();
        assert_eq!(back.dim(), 4);
        for (a, b) in back.rotations().iter().zip(chain.rotations()) {
            assert_eq!(a.plane(), b.plane());
            assert!((a.angle() - b.angle()).abs() < 1e-15);
        }
    }
}

//! Real-amplitude n-qubit states.
//!
//! Basis ordering is fixed: the first ket symbol is the most significant bit of the
//! basis index, so `|q₁ q₂ … qₙ⟩` sits at index `q₁·2ⁿ⁻¹ + … + qₙ`. Qubit positions
//! are 1-based throughout the crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::ShotRng;

/// Ordering tag carried by every serialized state.
pub const ORDERING: &str = "msb-first";

/// Construction tolerance on `|Σ aᵢ² − 1|`.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<f64>,
}

/// Single qubit `a|0⟩ + b|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Qubit {
    a: f64,
    b: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementRecord {
    pub qubit_index: usize,
    pub outcome: u8,
    pub probability: f64,
    pub post_state: StateVector,
}

fn check_norm(values: &[f64]) -> Result<()> {
    let sq: f64 = values.iter().map(|v| v * v).sum();
    if (sq - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized {
            norm: sq.sqrt(),
            tol: NORM_TOL,
        });
    }
    Ok(())
}

impl Qubit {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        check_norm(&[a, b])?;
        Ok(Self { a, b })
    }

    /// Scales `(a, b)` to unit length.
    pub fn normalized(a: f64, b: f64) -> Result<Self> {
        let n = a.hypot(b);
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { a: a / n, b: b / n })
    }

    /// `cos t |0⟩ + sin t |1⟩`.
    pub fn from_angle(t: f64) -> Self {
        Self {
            a: t.cos(),
            b: t.sin(),
        }
    }

    pub fn zero() -> Self {
        Self { a: 1.0, b: 0.0 }
    }

    pub fn one() -> Self {
        Self { a: 0.0, b: 1.0 }
    }

    /// `(|0⟩ + |1⟩)/√2`
    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { a: h, b: h }
    }

    /// `(|0⟩ − |1⟩)/√2`
    pub fn minus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { a: h, b: -h }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn to_state(self) -> StateVector {
        StateVector {
            num_qubits: 1,
            amplitudes: vec![self.a, self.b],
        }
    }
}

impl From<Qubit> for StateVector {
    fn from(q: Qubit) -> Self {
        q.to_state()
    }
}

impl StateVector {
    pub fn basis_state(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits == 0 || num_qubits >= usize::BITS as usize {
            return Err(Error::BadLength(0));
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::IndexOutOfRange {
                index,
                qubits: num_qubits,
            });
        }
        let mut amplitudes = vec![0.0; dim];
        amplitudes[index] = 1.0;
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    pub fn from_amplitudes(values: Vec<f64>, renormalize: bool) -> Result<Self> {
        let len = values.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength(len));
        }
        let num_qubits = len.trailing_zeros() as usize;
        let mut amplitudes = values;
        if renormalize {
            let norm = amplitudes.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::ZeroNorm);
            }
            amplitudes.iter_mut().for_each(|v| *v /= norm);
        } else {
            check_norm(&amplitudes)?;
        }
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Wraps amplitudes produced by a norm-preserving operation.
    pub(crate) fn from_raw(num_qubits: usize, amplitudes: Vec<f64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1 << num_qubits);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<f64> {
        self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Kronecker product; `self` occupies the high-order index bits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for &u in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|&v| u * v));
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    pub fn inner(&self, other: &StateVector) -> Result<f64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(u, v)| u * v)
            .sum())
    }

    /// Largest absolute amplitude difference.
    pub fn max_abs_diff(&self, other: &StateVector) -> Result<f64> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max))
    }

    /// Bit shift of the 1-based qubit `position` inside a basis index.
    pub(crate) fn shift_of(&self, position: usize) -> Result<usize> {
        if position == 0 || position > self.num_qubits {
            return Err(Error::BadPosition {
                position,
                qubits: self.num_qubits,
            });
        }
        Ok(self.num_qubits - position)
    }

    /// Bit value of qubit `position` in basis index `index`.
    pub fn bit(&self, index: usize, position: usize) -> Result<u8> {
        let shift = self.shift_of(position)?;
        Ok(((index >> shift) & 1) as u8)
    }

    /// Probability of reading `outcome` on `qubit_index` and the collapsed state
    /// (`None` when that probability is zero).
    pub fn project(&self, qubit_index: usize, outcome: u8) -> Result<(f64, Option<StateVector>)> {
        let shift = self.shift_of(qubit_index)?;
        let want = usize::from(outcome & 1);
        let keep = |i: usize| (i >> shift) & 1 == want;
        let probability: f64 = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|&(i, _)| keep(i))
            .map(|(_, v)| v * v)
            .sum();
        if probability == 0.0 {
            return Ok((0.0, None));
        }
        let scale = probability.sqrt().recip();
        let amplitudes = self
            .amplitudes
            .iter()
            .enumerate()
            .map(|(i, &v)| if keep(i) { v * scale } else { 0.0 })
            .collect();
        Ok((probability, Some(StateVector::from_raw(self.num_qubits, amplitudes))))
    }

    /// Samples one outcome on `qubit_index`: outcome 0 iff a uniform draw falls below P(0).
    pub fn measure(&self, qubit_index: usize, rng: &mut ShotRng) -> Result<MeasurementRecord> {
        let (p0, post0) = self.project(qubit_index, 0)?;
        let u = rng.uniform();
        let (outcome, probability, post) = if u < p0 {
            (0, p0, post0)
        } else {
            let (p1, post1) = self.project(qubit_index, 1)?;
            (1, p1, post1)
        };
        let post_state = post.ok_or_else(|| {
            Error::Structure(format!("sampled an outcome with zero probability on qubit {qubit_index}"))
        })?;
        Ok(MeasurementRecord {
            qubit_index,
            outcome,
            probability,
            post_state,
        })
    }

    /// Amplitudes of the qubits `1..=keep` after fixing the trailing qubits to basis
    /// index `tail`; the result is renormalized.
    pub fn restrict_leading(&self, keep: usize, tail: usize) -> Result<StateVector> {
        if keep == 0 || keep >= self.num_qubits {
            return Err(Error::BadPosition {
                position: keep,
                qubits: self.num_qubits,
            });
        }
        let drop = self.num_qubits - keep;
        if tail >= 1 << drop {
            return Err(Error::IndexOutOfRange {
                index: tail,
                qubits: drop,
            });
        }
        let values = (0..1usize << keep)
            .map(|hi| self.amplitudes[(hi << drop) | tail])
            .collect();
        StateVector::from_amplitudes(values, true)
    }

    pub fn to_document(&self) -> StateDocument {
        StateDocument {
            qubits: self.num_qubits,
            amplitudes: self.amplitudes.clone(),
            ordering: ORDERING.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("state document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StateDocument = serde_json::from_str(text)?;
        doc.into_state()
    }
}

/// `{"qubits": n, "amplitudes": [...], "ordering": "msb-first"}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub qubits: usize,
    pub amplitudes: Vec<f64>,
    #[serde(default = "default_ordering")]
    pub ordering: String,
}

fn default_ordering() -> String {
    ORDERING.to_string()
}

impl StateDocument {
    pub fn into_state(self) -> Result<StateVector> {
        if self.ordering != ORDERING {
            return Err(Error::Ordering(self.ordering));
        }
        let expected = 1usize.checked_shl(self.qubits as u32).unwrap_or(0);
        if self.qubits == 0 || self.amplitudes.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.amplitudes.len(),
            });
        }
        StateVector::from_amplitudes(self.amplitudes, false)
    }
}

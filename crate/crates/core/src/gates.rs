//! Gates defined by their action on basis-index bits.
//!
//! Positions are 1-based and position 1 is the most significant index bit. Gates are
//! applied by shuffling or mixing amplitude pairs; dense matrices are produced only for
//! export and for checking against independent oracles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::UnitaryMatrix;
use crate::state::StateVector;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GateDocument", into = "GateDocument")]
pub enum Gate {
    Cnot { control: usize, target: usize },
    Hadamard { k: usize },
    /// Flips `target` iff `bit(c1) XOR bit(c2) = 1`.
    XorCnot { c1: usize, c2: usize, target: usize },
    Toffoli { c1: usize, c2: usize, target: usize },
    /// Output amplitude at `i` is the input amplitude at `map[i]`.
    Permutation { map: Vec<usize> },
    /// Acts on the contiguous positions `start ..= start + log2(dim) − 1`.
    Dense { matrix: UnitaryMatrix, start: usize },
}

fn distinct(positions: &[usize]) -> Result<()> {
    for (i, a) in positions.iter().enumerate() {
        if positions[i + 1..].contains(a) {
            return Err(Error::OverlappingPositions(positions.to_vec()));
        }
    }
    Ok(())
}

fn flip_where(state: &StateVector, target: usize, cond: impl Fn(usize) -> bool) -> Result<StateVector> {
    let t = 1usize << state.shift_of(target)?;
    let mut amps = state.amplitudes().to_vec();
    for i in 0..amps.len() {
        if i & t == 0 && cond(i) {
            amps.swap(i, i | t);
        }
    }
    Ok(StateVector::from_raw(state.num_qubits(), amps))
}

pub fn apply_cnot(state: &StateVector, control: usize, target: usize) -> Result<StateVector> {
    distinct(&[control, target])?;
    let c = 1usize << state.shift_of(control)?;
    flip_where(state, target, |i| i & c != 0)
}

pub fn apply_hadamard(state: &StateVector, k: usize) -> Result<StateVector> {
    let bit = 1usize << state.shift_of(k)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = state.amplitudes().to_vec();
    for i in 0..amps.len() {
        if i & bit == 0 {
            let (x, y) = (amps[i], amps[i | bit]);
            amps[i] = h * (x + y);
            amps[i | bit] = h * (x - y);
        }
    }
    Ok(StateVector::from_raw(state.num_qubits(), amps))
}

pub fn apply_xor_cnot(state: &StateVector, c1: usize, c2: usize, target: usize) -> Result<StateVector> {
    distinct(&[c1, c2, target])?;
    let (s1, s2) = (state.shift_of(c1)?, state.shift_of(c2)?);
    flip_where(state, target, |i| ((i >> s1) ^ (i >> s2)) & 1 == 1)
}

pub fn apply_toffoli(state: &StateVector, c1: usize, c2: usize, target: usize) -> Result<StateVector> {
    distinct(&[c1, c2, target])?;
    let mask = (1usize << state.shift_of(c1)?) | (1usize << state.shift_of(c2)?);
    flip_where(state, target, |i| i & mask == mask)
}

fn check_bijection(map: &[usize], dim: usize) -> Result<()> {
    if map.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: map.len(),
        });
    }
    let mut seen = vec![false; dim];
    for &j in map {
        if j >= dim || std::mem::replace(&mut seen[j], true) {
            return Err(Error::NotBijective(dim));
        }
    }
    Ok(())
}

pub fn apply_permutation(state: &StateVector, map: &[usize]) -> Result<StateVector> {
    check_bijection(map, state.dim())?;
    let src = state.amplitudes();
    let amps = map.iter().map(|&j| src[j]).collect();
    Ok(StateVector::from_raw(state.num_qubits(), amps))
}

/// Full-register matrix–vector product.
pub fn apply_dense(state: &StateVector, matrix: &UnitaryMatrix) -> Result<StateVector> {
    if matrix.dim() != state.dim() {
        return Err(Error::DimensionMismatch {
            expected: state.dim(),
            actual: matrix.dim(),
        });
    }
    apply_dense_span(state, matrix, 1)
}

/// Applies `matrix` to the contiguous qubits starting at `start`.
pub fn apply_dense_span(state: &StateVector, matrix: &UnitaryMatrix, start: usize) -> Result<StateVector> {
    let d = matrix.dim();
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::BadLength(d));
    }
    let m = d.trailing_zeros() as usize;
    let n = state.num_qubits();
    if start == 0 || start + m - 1 > n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            actual: d,
        });
    }
    // sub-register occupies bits [low, low + m)
    let low = n + 1 - start - m;
    let mask = (d - 1) << low;
    let src = state.amplitudes();
    let mut out = vec![0.0; src.len()];
    for (i, slot) in out.iter_mut().enumerate() {
        let row = (i & mask) >> low;
        let base = i & !mask;
        *slot = (0..d).map(|col| matrix.get(row, col) * src[base | (col << low)]).sum();
    }
    Ok(StateVector::from_raw(n, out))
}

impl Gate {
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        match self {
            Gate::Cnot { control, target } => apply_cnot(state, *control, *target),
            Gate::Hadamard { k } => apply_hadamard(state, *k),
            Gate::XorCnot { c1, c2, target } => apply_xor_cnot(state, *c1, *c2, *target),
            Gate::Toffoli { c1, c2, target } => apply_toffoli(state, *c1, *c2, *target),
            Gate::Permutation { map } => apply_permutation(state, map),
            Gate::Dense { matrix, start } => apply_dense_span(state, matrix, *start),
        }
    }

    /// Basis-index map of a classical gate on `n` qubits (msb-first), `None` for
    /// Hadamard and dense gates.
    pub fn index_map(&self, n: usize) -> Result<Option<Vec<usize>>> {
        if matches!(self, Gate::Hadamard { .. } | Gate::Dense { .. }) {
            return Ok(None);
        }
        if let Gate::Permutation { map } = self {
            check_bijection(map, 1 << n)?;
            return Ok(Some(map.clone()));
        }
        // track where each basis index lands by pushing index labels through the gate
        let labels: Vec<f64> = (0..1usize << n).map(|i| i as f64).collect();
        let probe = StateVector::from_raw(n, labels);
        let moved = self.apply(&probe)?;
        Ok(Some(moved.amplitudes().iter().map(|&v| v as usize).collect()))
    }

    /// Dense `2ⁿ × 2ⁿ` matrix of the gate, assembled column by column.
    pub fn matrix(&self, n: usize) -> Result<UnitaryMatrix> {
        let dim = 1usize << n;
        let mut rows = vec![vec![0.0; dim]; dim];
        for col in 0..dim {
            let e = StateVector::basis_state(n, col)?;
            let out = self.apply(&e)?;
            for (row, v) in rows.iter_mut().zip(out.amplitudes()) {
                row[col] = *v;
            }
        }
        UnitaryMatrix::from_rows(&rows)
    }
}

pub fn run_circuit(state: &StateVector, gates: &[Gate]) -> Result<StateVector> {
    gates.iter().try_fold(state.clone(), |s, g| g.apply(&s))
}

/// Reverses the low `n` bits of `index`.
pub fn reverse_bits(index: usize, n: usize) -> usize {
    (0..n).fold(0, |acc, b| (acc << 1) | ((index >> b) & 1))
}

/// Re-expresses an index map between msb-first and lsb-first labellings; the
/// translation is its own inverse.
pub fn translate_index_map(map: &[usize]) -> Result<Vec<usize>> {
    let dim = map.len();
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::BadLength(dim));
    }
    check_bijection(map, dim)?;
    let n = dim.trailing_zeros() as usize;
    Ok((0..dim)
        .map(|i| reverse_bits(map[reverse_bits(i, n)], n))
        .collect())
}

/// Re-indexes a state's amplitudes into lsb-first order (or back).
pub fn reverse_ordering(state: &StateVector) -> StateVector {
    let n = state.num_qubits();
    let src = state.amplitudes();
    let amps = (0..src.len()).map(|i| src[reverse_bits(i, n)]).collect();
    StateVector::from_raw(n, amps)
}

/// Serialized gate: `{"kind": "cnot" | "h" | "xor_cnot" | "toffoli" | "perm" | "dense", ...}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GateDocument {
    Cnot { control: usize, target: usize },
    H { k: usize },
    XorCnot { c1: usize, c2: usize, target: usize },
    Toffoli { c1: usize, c2: usize, target: usize },
    Perm { map: Vec<usize> },
    Dense {
        rows: Vec<Vec<f64>>,
        #[serde(default = "first_position")]
        start: usize,
    },
}

fn first_position() -> usize {
    1
}

impl TryFrom<GateDocument> for Gate {
    type Error = Error;

    fn try_from(doc: GateDocument) -> Result<Self> {
        Ok(match doc {
            GateDocument::Cnot { control, target } => {
                distinct(&[control, target])?;
                Gate::Cnot { control, target }
            }
            GateDocument::H { k } => Gate::Hadamard { k },
            GateDocument::XorCnot { c1, c2, target } => {
                distinct(&[c1, c2, target])?;
                Gate::XorCnot { c1, c2, target }
            }
            GateDocument::Toffoli { c1, c2, target } => {
                distinct(&[c1, c2, target])?;
                Gate::Toffoli { c1, c2, target }
            }
            GateDocument::Perm { map } => {
                check_bijection(&map, map.len())?;
                Gate::Permutation { map }
            }
            GateDocument::Dense { rows, start } => Gate::Dense {
                matrix: UnitaryMatrix::from_rows(&rows)?,
                start,
            },
        })
    }
}

impl From<Gate> for GateDocument {
    fn from(g: Gate) -> Self {
        match g {
            Gate::Cnot { control, target } => GateDocument::Cnot { control, target },
            Gate::Hadamard { k } => GateDocument::H { k },
            Gate::XorCnot { c1, c2, target } => GateDocument::XorCnot { c1, c2, target },
            Gate::Toffoli { c1, c2, target } => GateDocument::Toffoli { c1, c2, target },
            Gate::Permutation { map } => GateDocument::Perm { map },
            Gate::Dense { matrix, start } => GateDocument::Dense {
                rows: matrix.rows(),
                start,
            },
        }
    }
}

pub fn circuit_from_json(text: &str) -> Result<Vec<Gate>> {
    Ok(serde_json::from_str(text)?)
}

pub fn circuit_to_json(gates: &[Gate]) -> String {
    serde_json::to_string_pretty(gates).expect("gate documents serialize")
}

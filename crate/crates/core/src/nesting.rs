//! Three-qubit circuit that nests a doubled copy of a qubit and exposes it by one
//! measurement.
//!
//! Steps, with qubit 1 the most significant:
//! 1. `ψ = CNOT₁→₂ (φ ⊗ |0⟩) = a|00⟩ + b|11⟩`
//! 2. prepend `H|0⟩` as the new qubit 1
//! 3. `χ = CNOT₁→₃ (H|0⟩ ⊗ ψ) = (a|000⟩ + b|011⟩ + a|101⟩ + b|110⟩)/√2`
//! 4. `ξ = XOR(1,2 → 3) χ = (a|000⟩ + b|010⟩ + a|100⟩ + b|110⟩)/√2`
//! 5. measure qubit 1, giving `M` with probability ½ either way
//! 6. the first two qubits now hold `|M⟩ ⊗ φ`

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{apply_cnot, apply_hadamard, apply_xor_cnot};
use crate::rng::ShotRng;
use crate::state::{MeasurementRecord, Qubit, StateDocument, StateVector};

/// Tolerance used when checking structural claims about a measured state.
pub const STRUCTURE_TOL: f64 = 1e-12;

/// Intermediate states of steps 1 to 4.
#[derive(Clone, Debug, PartialEq)]
pub struct NestedStates {
    pub psi: StateVector,
    pub chi: StateVector,
    pub xi: StateVector,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Extraction {
    pub outcome: u8,
    pub record: MeasurementRecord,
    /// First two qubits after the measurement: `|M⟩ ⊗ φ`.
    pub doubled: StateVector,
    /// Third qubit after the measurement, always `|0⟩`.
    pub residual: StateVector,
    /// `(a, b)` read back from the amplitude slots `|M0⟩`, `|M1⟩`.
    pub recovered: (f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct NestingRun {
    pub input: Qubit,
    pub states: NestedStates,
    pub extraction: Extraction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShotHistogram {
    pub shots: u64,
    pub counts: [u64; 2],
    pub seed: u64,
}

impl ShotHistogram {
    pub fn frequency(&self, outcome: u8) -> f64 {
        self.counts[usize::from(outcome & 1)] as f64 / self.shots as f64
    }
}

pub fn build_xi(input: Qubit) -> NestedStates {
    let zero = StateVector::basis_state(1, 0).expect("1-qubit basis");
    let psi = apply_cnot(&input.to_state().tensor(&zero), 1, 2).expect("2-qubit cnot");
    let ancilla = apply_hadamard(&zero, 1).expect("1-qubit hadamard");
    let chi = apply_cnot(&ancilla.tensor(&psi), 1, 3).expect("3-qubit cnot");
    let xi = apply_xor_cnot(&chi, 1, 2, 3).expect("3-qubit xor");
    NestedStates { psi, chi, xi }
}

/// Measures qubit 1 of `ξ` and splits the result into the doubled pair and the
/// trailing qubit.
pub fn measure_and_extract(xi: &StateVector, rng: &mut ShotRng) -> Result<Extraction> {
    if xi.num_qubits() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            actual: xi.dim(),
        });
    }
    let (p_one, _) = xi.project(3, 1)?;
    if p_one > STRUCTURE_TOL {
        return Err(Error::Structure(format!(
            "third qubit reads 1 with probability {p_one:e}"
        )));
    }
    let record = xi.measure(1, &mut *rng)?;
    let outcome = record.outcome;
    let post = &record.post_state;
    let doubled = post.restrict_leading(2, 0)?;
    let base = usize::from(outcome) << 1;
    let recovered = (doubled.amplitudes()[base], doubled.amplitudes()[base | 1]);
    let residual = StateVector::basis_state(1, 0)?;
    Ok(Extraction {
        outcome,
        doubled,
        residual,
        recovered,
        record,
    })
}

pub fn run(input: Qubit, rng: &mut ShotRng) -> Result<NestingRun> {
    let states = build_xi(input);
    let extraction = measure_and_extract(&states.xi, rng)?;
    Ok(NestingRun {
        input,
        states,
        extraction,
    })
}

/// Runs the full pipeline `shots` times on one seeded stream and counts `M`.
pub fn sample(input: Qubit, shots: u64, seed: u64) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut rng = ShotRng::new(seed);
    let mut counts = [0u64; 2];
    for _ in 0..shots {
        let r = run(input, &mut rng)?;
        counts[usize::from(r.extraction.outcome)] += 1;
    }
    Ok(ShotHistogram { shots, counts, seed })
}

/// Recovers `(a, b)` from `a²|00⟩ + ab|01⟩ + ab|10⟩ + b²|11⟩`, up to a global sign.
pub fn undouble(phi2: &StateVector) -> Result<Qubit> {
    if phi2.num_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: phi2.dim(),
        });
    }
    let v = phi2.amplitudes();
    let not_doubled = || Error::Structure("state is not of the form φ ⊗ φ".into());
    if v[0] < -1e-9 || v[3] < -1e-9 {
        return Err(not_doubled());
    }
    let (a, b) = if v[0] >= v[3] {
        let a = v[0].max(0.0).sqrt();
        (a, v[1] / a)
    } else {
        let b = v[3].max(0.0).sqrt();
        (v[2] / b, b)
    };
    let q = Qubit::normalized(a, b).map_err(|_| not_doubled())?;
    let rebuilt = q.to_state().tensor(&q.to_state());
    if phi2.max_abs_diff(&rebuilt)? > 1e-9 {
        return Err(not_doubled());
    }
    Ok(q)
}

/// Measures qubit 1 of a doubled state `φ ⊗ φ`: outcome 0 with probability a²
/// leaving `a|00⟩ + b|01⟩`, outcome 1 with probability b² leaving `a|10⟩ + b|11⟩`.
pub fn doubled_qubit_measurement(phi2: &StateVector, rng: &mut ShotRng) -> Result<(u8, StateVector)> {
    undouble(phi2)?;
    let record = phi2.measure(1, rng)?;
    Ok((record.outcome, record.post_state))
}

/// Audit record of one pipeline run.
#[derive(Clone, Debug, Serialize)]
pub struct Transcript {
    pub input: [f64; 2],
    pub seed: u64,
    pub psi: StateDocument,
    pub chi: StateDocument,
    pub xi: StateDocument,
    pub outcome: u8,
    pub probability: f64,
    pub post_state: StateDocument,
    pub doubled: StateDocument,
    pub residual: StateDocument,
    pub recovered: [f64; 2],
}

impl NestingRun {
    pub fn transcript(&self, seed: u64) -> Transcript {
        let e = &self.extraction;
        Transcript {
            input: [self.input.a(), self.input.b()],
            seed,
            psi: self.states.psi.to_document(),
            chi: self.states.chi.to_document(),
            xi: self.states.xi.to_document(),
            outcome: e.outcome,
            probability: e.record.probability,
            post_state: e.record.post_state.to_document(),
            doubled: e.doubled.to_document(),
            residual: e.residual.to_document(),
            recovered: [e.recovered.0, e.recovered.1],
        }
    }
}

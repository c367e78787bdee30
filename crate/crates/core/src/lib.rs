//! Real-amplitude state-vector engine built around Givens-rotation heap transforms.
//!
//! * [`state`]: n-qubit states, tensor products, projection and sampled measurement
//! * [`heap`]: rotation chains generated by a vector and the transfer unitaries they compose
//! * [`gates`]: bit-level CNOT, Hadamard, two-control XOR, Toffoli and permutation gates
//! * [`nesting`]: the three-qubit circuit that nests a doubled qubit and reads it out
//! * [`cloning`]: copier unitaries and their fidelity on other inputs
//! * [`verify`]: the numerical checks run by `nestq verify`

pub mod cloning;
pub mod error;
pub mod fixtures;
pub mod gates;
pub mod heap;
pub mod matrix;
pub mod nesting;
pub mod rng;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use gates::Gate;
pub use heap::{GivensRotation, RotationChain};
pub use matrix::UnitaryMatrix;
pub use rng::ShotRng;
pub use state::{MeasurementRecord, Qubit, StateVector};

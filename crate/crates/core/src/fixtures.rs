//! Reference matrices as published to four decimals, used as golden data by the
//! verification suite. Nothing in the engine is computed from these.
#![allow(clippy::approx_constant)]

pub type Mat4 = [[f64; 4]; 4];

const R2: f64 = std::f64::consts::SQRT_2;

/// Heap transform generated by `(1,0,0,1)/√2`.
pub const BELL_HEAP: Mat4 = [
    [0.7071, 0.0, 0.0, 0.7071],
    [0.0, 1.0, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [-0.7071, 0.0, 0.0, 0.7071],
];

/// Heap transform generated by `(1,1,1,1)/2`, printed as ½ times this matrix.
pub const FLAT_HEAP_HALVED: Mat4 = [
    [1.0, 1.0, 1.0, 1.0],
    [-R2, R2, 0.0, 0.0],
    [-0.8165, -0.8165, 1.6330, 0.0],
    [-0.5774, -0.5774, -0.5774, 1.7321],
];

/// Rotation factors of the flat heap transform, leftmost (last applied) first.
pub const FLAT_HEAP_FACTORS: [Mat4; 3] = [
    [
        [0.8660, 0.0, 0.0, 0.5],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [-0.5, 0.0, 0.0, 0.8660],
    ],
    [
        [0.8165, 0.0, 0.5774, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-0.5774, 0.0, 0.8165, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
    [
        [0.7071, 0.7071, 0.0, 0.0],
        [-0.7071, 0.7071, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ],
];

/// Transfer `(1,0,0,1)/√2 → (1,1,1,1)/2`.
pub const BELL_TO_FLAT: Mat4 = [
    [0.5577, -0.7071, -0.4082, 0.1494],
    [0.5577, 0.7071, -0.4082, 0.1494],
    [0.5577, 0.0, 0.8165, 0.1494],
    [-0.2588, 0.0, 0.0, 0.9659],
];

/// Copier for `(3|0⟩ + 4|1⟩)/5` from two heap transforms.
pub const THREE_FOUR_COPIER: Mat4 = [
    [0.5159, -0.80, 0.0631, -0.2999],
    [0.6878, 0.60, 0.0841, -0.3998],
    [-0.3367, 0.0, 0.8525, -0.3998],
    [0.3840, 0.0, 0.5120, 0.7684],
];

/// Alternative copier for `(3|0⟩ + 4|1⟩)/5` built from a five-rotation transform.
pub const THREE_FOUR_STRONG_COPIER: Mat4 = [
    [-0.4240, -0.3748, 0.7680, -0.2999],
    [0.7680, -0.4998, 0.0240, -0.3998],
    [0.2880, 0.7809, 0.3840, -0.3998],
    [0.3840, 0.0, 0.5120, 0.7684],
];

/// Rotation magnitudes, in degrees, reported for the three-four copier.
pub const THREE_FOUR_ANGLES: [f64; 3] = [53.13, 38.66, 39.79];

/// Hand-built matrix sending `(1,0,0,1)` to `(1,1,1,1)/√2`, printed as 1/√2 times this.
pub const HAND_BUILT_A_SCALED: Mat4 = [
    [1.0, 0.0, 1.0, 0.0],
    [0.0, 1.0, 0.0, 1.0],
    [0.0, -1.0, 0.0, 1.0],
    [1.0, 0.0, -1.0, 0.0],
];

/// Printed inverse of the hand-built matrix, scaled by √2.
pub const HAND_BUILT_A_INVERSE_SCALED: Mat4 = [
    [1.0, 0.0, 0.0, 1.0],
    [0.0, 1.0, -1.0, 0.0],
    [1.0, 0.0, 0.0, -1.0],
    [0.0, 1.0, 1.0, 0.0],
];

/// Plus/minus copier, scaled by √2.
pub const PLUS_MINUS_COPIER_SCALED: Mat4 = [
    [1.0, 0.0, 0.0, 1.0],
    [0.0, 1.0, 1.0, 0.0],
    [0.0, -1.0, 1.0, 0.0],
    [1.0, 0.0, 0.0, -1.0],
];

pub fn scaled(m: &Mat4, factor: f64) -> Mat4 {
    m.map(|row| row.map(|v| v * factor))
}

pub fn to_rows(m: &Mat4) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.to_vec()).collect()
}

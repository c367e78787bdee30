//! Built-in numerical checks: golden matrices, the copier examples, the nesting pipeline,
//! sampling statistics, copying fidelity and randomized algebraic properties.
//!
//! Each check reports its measured residual next to the bound it must meet.

use std::fmt;

use crate::cloning::{
    clone_fidelity, cnot_matrix, copier_for, copier_input, doubled_state, hadamard_copier,
    hadamard_copier_factors, hand_built_a, hand_built_a_factors, hand_built_core, product,
    relation_holds, swap_last_pair,
};
use crate::error::Result;
use crate::fixtures::{self, Mat4};
use crate::gates::{apply_cnot, apply_hadamard, apply_toffoli, apply_xor_cnot};
use crate::heap::{dsiht_chain, transfer_unitary};
use crate::matrix::UnitaryMatrix;
use crate::nesting::{build_xi, measure_and_extract, sample};
use crate::rng::ShotRng;
use crate::state::{Qubit, StateVector};

/// Seed for every randomized input drawn by the checks.
pub const VERIFY_SEED: u64 = 0x5eed_2024;

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}: {}", self.name, self.detail)
    }
}

/// Golden data the checks compare against; swap entries to exercise the harness.
#[derive(Clone, Debug, PartialEq)]
pub struct Fixtures {
    pub bell_heap: Mat4,
    pub flat_heap: Mat4,
    pub flat_heap_factors: [Mat4; 3],
    pub bell_to_flat: Mat4,
    pub three_four_copier: Mat4,
    pub three_four_strong: Mat4,
    pub three_four_angles: [f64; 3],
    pub hand_built_a: Mat4,
    pub hand_built_a_inverse: Mat4,
    pub plus_minus_copier: Mat4,
}

impl Fixtures {
    pub fn published() -> Self {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        Self {
            bell_heap: fixtures::BELL_HEAP,
            flat_heap: fixtures::scaled(&fixtures::FLAT_HEAP_HALVED, 0.5),
            flat_heap_factors: fixtures::FLAT_HEAP_FACTORS,
            bell_to_flat: fixtures::BELL_TO_FLAT,
            three_four_copier: fixtures::THREE_FOUR_COPIER,
            three_four_strong: fixtures::THREE_FOUR_STRONG_COPIER,
            three_four_angles: fixtures::THREE_FOUR_ANGLES,
            hand_built_a: fixtures::scaled(&fixtures::HAND_BUILT_A_SCALED, r),
            hand_built_a_inverse: fixtures::scaled(&fixtures::HAND_BUILT_A_INVERSE_SCALED, r),
            plus_minus_copier: fixtures::scaled(&fixtures::PLUS_MINUS_COPIER_SCALED, r),
        }
    }
}

impl Default for Fixtures {
    fn default() -> Self {
        Self::published()
    }
}

/// Tolerance for four-decimal golden matrices.
pub const GOLDEN_TOL: f64 = 5e-5;

pub fn max_diff(m: &UnitaryMatrix, golden: &Mat4) -> f64 {
    if m.dim() != 4 {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for (i, row) in golden.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            worst = worst.max((m.get(i, j) - g).abs());
        }
    }
    worst
}

fn max_vec_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn mat4_apply(m: &Mat4, v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

fn mat4_det(m: &Mat4) -> f64 {
    let rows = fixtures::to_rows(m);
    UnitaryMatrix::from_rows_with_tolerance(&rows, f64::INFINITY)
        .map(|u| u.det())
        .unwrap_or(f64::NAN)
}

/// Unit vector with coordinates drawn uniformly from `[−1, 1]` and rescaled.
pub fn random_unit(rng: &mut ShotRng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| 2.0 * rng.uniform() - 1.0).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

pub fn random_qubit(rng: &mut ShotRng) -> Qubit {
    Qubit::from_angle(std::f64::consts::TAU * rng.uniform())
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn bound(&mut self, name: &str, value: f64, limit: f64) {
        self.checks.push(Check {
            name: name.to_string(),
            passed: value <= limit,
            detail: format!("{value:.3e} <= {limit:e}"),
        });
    }

    fn flag(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

pub fn run_all() -> Vec<Check> {
    run_with(&Fixtures::published())
}

pub fn run_with(fx: &Fixtures) -> Vec<Check> {
    let mut r = Recorder { checks: Vec::new() };
    golden_heap_matrices(&mut r, fx);
    three_four_copiers(&mut r, fx);
    plus_minus_copier(&mut r, fx);
    nesting_pipeline(&mut r);
    sampling_statistics(&mut r);
    no_cloning(&mut r);
    properties(&mut r);
    r.checks
}

fn golden_heap_matrices(r: &mut Recorder, fx: &Fixtures) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bell = [h, 0.0, 0.0, h];
    let flat = [0.5; 4];
    let bell_chain = dsiht_chain(&bell).expect("unit");
    let flat_chain = dsiht_chain(&flat).expect("unit");
    r.bound(
        "1 heap matrix for (1,0,0,1)/√2 max|Δ|",
        max_diff(&bell_chain.matrix(), &fx.bell_heap),
        GOLDEN_TOL,
    );
    r.bound(
        "1 heap matrix for (1,1,1,1)/2 max|Δ|",
        max_diff(&flat_chain.matrix(), &fx.flat_heap),
        GOLDEN_TOL,
    );
    let factors = flat_chain.factors();
    let worst = fx
        .flat_heap_factors
        .iter()
        .zip(factors.iter().rev())
        .map(|(g, f)| max_diff(f, g))
        .fold(0.0, f64::max);
    r.bound("1 rotation factors for (1,1,1,1)/2 max|Δ|", worst, GOLDEN_TOL);
    let u = transfer_unitary(&bell, &flat).expect("unit pair");
    r.bound(
        "1 transfer (1,0,0,1)/√2 → (1,1,1,1)/2 matrix max|Δ|",
        max_diff(&u, &fx.bell_to_flat),
        GOLDEN_TOL,
    );
    let residual = max_vec_diff(&u.apply(&[1.0, 0.0, 0.0, 1.0]).expect("dim 4"), &[h * 1.0; 4]);
    r.bound("1 transfer maps (1,0,0,1) to (1,1,1,1)/√2", residual, 1e-12);
}

fn three_four_copiers(r: &mut Recorder, fx: &Fixtures) {
    let q = Qubit::new(0.6, 0.8).expect("unit");
    let u = copier_for(q);
    r.bound("2 copier for (3,4)/5 max|Δ|", max_diff(&u, &fx.three_four_copier), GOLDEN_TOL);
    let y = doubled_state(q);
    let chain = dsiht_chain(y.amplitudes()).expect("unit");
    let worst = chain
        .degrees()
        .iter()
        .zip(&fx.three_four_angles)
        .map(|(d, g)| (d.abs() - g).abs())
        .fold(0.0, f64::max);
    r.bound("2 rotation angle magnitudes (degrees) max|Δ|", worst, 0.01);
    let x = copier_input(q);
    let src_angle = dsiht_chain(x.amplitudes()).expect("unit").degrees()[1];
    r.bound(
        "2 source rotation −53.13° |Δ|",
        (src_angle + fx.three_four_angles[0]).abs(),
        0.01,
    );
    let strong = &fx.three_four_strong;
    r.bound(
        "2 five-rotation copier U·x = y max|Δ|",
        max_vec_diff(&mat4_apply(strong, x.amplitudes()), y.amplitudes()),
        1e-3,
    );
    r.bound("2 five-rotation copier |det − 1|", (mat4_det(strong) - 1.0).abs(), 1e-3);
}

fn plus_minus_copier(r: &mut Recorder, fx: &Fixtures) {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let u = hadamard_copier();
    r.bound("3 plus/minus copier matches printed matrix", max_diff(&u, &fx.plus_minus_copier), 1e-12);
    let plus = u.apply(&[h, 0.0, h, 0.0]).expect("dim 4");
    r.bound("3 copier (1,0,1,0)/√2 → (1,1,1,1)/2", max_vec_diff(&plus, &[0.5; 4]), 1e-12);
    let minus = u.apply(&[h, 0.0, -h, 0.0]).expect("dim 4");
    r.bound(
        "3 copier (1,0,−1,0)/√2 → (1,−1,−1,1)/2",
        max_vec_diff(&minus, &[0.5, -0.5, -0.5, 0.5]),
        1e-12,
    );
    let printed_a = UnitaryMatrix::from_rows_with_tolerance(&fixtures::to_rows(&fx.hand_built_a), f64::INFINITY)
        .expect("square");
    r.flag(
        "3 U = A·P₁",
        relation_holds(&u, &printed_a, &swap_last_pair()),
        "entrywise within 1e-12".into(),
    );
    let a3 = product(&hand_built_a_factors()).expect("4x4 factors");
    r.bound("3 three-factor product reproduces A", max_diff(&a3, &fx.hand_built_a), 1e-12);
    r.bound(
        "3 Aᵀ matches printed inverse",
        max_diff(&hand_built_a().transpose(), &fx.hand_built_a_inverse),
        1e-12,
    );
    r.bound("3 det A = 1", (hand_built_a().det() - 1.0).abs(), 1e-12);
    let core = crate::cloning::hadamard_2().direct_sum(&crate::cloning::rotation_2());
    r.bound(
        "3 core factor is H₂ ⊕ A₂",
        hand_built_core().max_abs_diff(&core).unwrap_or(f64::INFINITY),
        1e-12,
    );
    let u3 = product(&hadamard_copier_factors()).expect("4x4 factors");
    r.bound("3 permutation factorization of U", max_diff(&u3, &fx.plus_minus_copier), 1e-12);
}

fn nesting_pipeline(r: &mut Recorder) {
    let mut rng = ShotRng::new(VERIFY_SEED);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let (mut closed, mut odd, mut prob, mut extract) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let q = random_qubit(&mut rng);
        let (a, b) = (q.a(), q.b());
        let xi = build_xi(q).xi;
        let want = [a * h, 0.0, b * h, 0.0, a * h, 0.0, b * h, 0.0];
        closed = closed.max(max_vec_diff(xi.amplitudes(), &want));
        odd = odd.max(xi.amplitudes().iter().skip(1).step_by(2).map(|v| v.abs()).fold(0.0, f64::max));
        let (p0, _) = xi.project(1, 0).expect("qubit 1");
        prob = prob.max((p0 - 0.5).abs());
        match measure_and_extract(&xi, &mut rng) {
            Ok(e) => {
                let m = StateVector::basis_state(1, usize::from(e.outcome)).expect("bit");
                let ideal = m.tensor(&q.to_state());
                extract = extract.max(e.doubled.max_abs_diff(&ideal).unwrap_or(f64::INFINITY));
            }
            Err(_) => extract = f64::INFINITY,
        }
    }
    r.bound("4 ξ equals closed form over 1000 inputs", closed, 1e-12);
    r.bound("4 third-qubit-one amplitudes are exactly 0", odd, 0.0);
    r.bound("4 P(M=0) − 0.5", prob, 1e-12);
    r.bound("4 extracted state equals |M⟩⊗(a,b)", extract, 1e-12);
}

/// Histogram and one-shot transcript for the sampling check, serialized.
pub fn sampling_fingerprint(seed: u64) -> Result<String> {
    let q = Qubit::new(0.6, 0.8)?;
    let hist = sample(q, 10_000, seed)?;
    let run = crate::nesting::run(q, &mut ShotRng::new(seed))?;
    Ok(format!(
        "{}\n{}",
        serde_json::to_string(&hist)?,
        serde_json::to_string(&run.transcript(seed))?
    ))
}

fn sampling_statistics(r: &mut Recorder) {
    let q = Qubit::new(0.6, 0.8).expect("unit");
    match sample(q, 10_000, 42) {
        Ok(h) => r.bound("5 M=0 frequency |f − 0.5| over 10000 shots", (h.frequency(0) - 0.5).abs(), 0.015),
        Err(e) => r.flag("5 M=0 frequency over 10000 shots", false, e.to_string()),
    }
    let same = matches!((sampling_fingerprint(42), sampling_fingerprint(42)), (Ok(a), Ok(b)) if a == b);
    r.flag("5 same seed gives identical output", same, "byte comparison".into());
}

fn no_cloning(r: &mut Recorder) {
    let plus = clone_fidelity(&cnot_matrix(), Qubit::plus()).map(|c| c.fidelity).unwrap_or(f64::NAN);
    r.bound("6 CNOT on (|0⟩+|1⟩)/√2: |F − 0.5|", (plus - 0.5).abs(), 1e-12);
    // the minus state's CNOT image (|00⟩−|11⟩)/√2 is orthogonal to φ⊗φ
    let minus = Qubit::minus();
    let f = clone_fidelity(&cnot_matrix(), minus).map(|c| c.fidelity).unwrap_or(f64::NAN);
    r.bound("6 CNOT on (|0⟩−|1⟩)/√2: F", f, 1e-12);
    let out = cnot_matrix().apply(copier_input(minus).amplitudes()).expect("dim 4");
    let gap = max_vec_diff(&out, doubled_state(minus).amplitudes());
    r.flag("6 CNOT output differs from φ⊗φ by ≥ 0.5", gap >= 0.5, format!("max|Δ| = {gap:.4}"));

    let mut rng = ShotRng::new(VERIFY_SEED ^ 6);
    let (mut on_source, mut failures) = (0.0f64, 0usize);
    for _ in 0..100 {
        let t = std::f64::consts::TAU * rng.uniform();
        let q = Qubit::from_angle(t);
        let u = copier_for(q);
        let f = clone_fidelity(&u, q).map(|c| c.fidelity).unwrap_or(0.0);
        on_source = on_source.max((1.0 - f).abs());
        let off = [-10f64, 10.0]
            .iter()
            .map(|d| Qubit::from_angle(t + d.to_radians()))
            .map(|p| clone_fidelity(&u, p).map(|c| c.fidelity).unwrap_or(1.0))
            .fold(f64::INFINITY, f64::min);
        if off > 1.0 - 1e-6 {
            failures += 1;
        }
    }
    r.bound("6 copier_for(q) fidelity on q: |1 − F| over 100 q", on_source, 1e-9);
    r.flag(
        "6 copier_for(q) fails 10° away for every q",
        failures == 0,
        format!("{failures} of 100 copiers stayed exact"),
    );
}

fn properties(r: &mut Recorder) {
    let mut rng = ShotRng::new(VERIFY_SEED ^ 7);
    let (mut unitary, mut det, mut sparse_dense, mut norm, mut complete, mut involution) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for dim in [2usize, 4, 8] {
        let n = dim.trailing_zeros() as usize;
        for _ in 0..100 {
            let a = random_unit(&mut rng, dim);
            let b = random_unit(&mut rng, dim);
            let chain = dsiht_chain(&a).expect("unit");
            let m = chain.matrix();
            let u = transfer_unitary(&a, &b).expect("unit pair");
            unitary = unitary.max(m.unitarity_residual()).max(u.unitarity_residual());
            det = det.max((m.det() - 1.0).abs()).max((u.det() - 1.0).abs());
            let v = random_unit(&mut rng, dim);
            let sparse = chain.apply(&v).expect("dim");
            let dense = m.apply(&v).expect("dim");
            sparse_dense = sparse_dense.max(max_vec_diff(&sparse, &dense));

            let s = StateVector::from_amplitudes(v, false).expect("unit");
            for k in 1..=n {
                let (p0, _) = s.project(k, 0).expect("position");
                let (p1, _) = s.project(k, 1).expect("position");
                complete = complete.max((p0 + p1 - 1.0).abs());
                let hs = apply_hadamard(&s, k).expect("position");
                norm = norm.max((hs.norm() - 1.0).abs());
            }
            if n >= 2 {
                let c = apply_cnot(&s, 1, n).expect("positions");
                norm = norm.max((c.norm() - 1.0).abs());
                let cc = apply_cnot(&c, 1, n).expect("positions");
                involution = involution.max(cc.max_abs_diff(&s).unwrap_or(f64::INFINITY));
            }
            if n >= 3 {
                let x = apply_xor_cnot(&s, 1, 2, 3).expect("positions");
                let xx = apply_xor_cnot(&x, 1, 2, 3).expect("positions");
                let t = apply_toffoli(&s, 1, 2, 3).expect("positions");
                let tt = apply_toffoli(&t, 1, 2, 3).expect("positions");
                norm = norm.max((x.norm() - 1.0).abs()).max((t.norm() - 1.0).abs());
                involution = involution
                    .max(xx.max_abs_diff(&s).unwrap_or(f64::INFINITY))
                    .max(tt.max_abs_diff(&s).unwrap_or(f64::INFINITY));
            }
        }
    }
    r.bound("7 unitarity max|UᵀU − I| (dims 2, 4, 8)", unitary, 1e-10);
    r.bound("7 chain/transfer |det − 1|", det, 1e-9);
    r.bound("7 sparse chain vs dense matrix max|Δ|", sparse_dense, 1e-12);
    r.bound("7 gate involutions max|Δ|", involution, 0.0);
    r.bound("7 norm preservation |‖Gψ‖ − 1|", norm, 1e-12);
    r.bound("7 projection completeness |P0 + P1 − 1|", complete, 1e-12);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_fixture_is_named() {
        let mut fx = Fixtures::published();
        fx.bell_to_flat[3][3] = 0.9;
        let failed: Vec<_> = run_with(&fx).into_iter().filter(|c| !c.passed).collect();
        assert_eq!(failed.len(), 1, "{failed:?}");
        assert!(failed[0].name.contains("transfer"));
    }

    #[test]
    fn random_unit_is_unit() {
        let mut rng = ShotRng::new(1);
        for dim in [2, 4, 8] {
            let v = random_unit(&mut rng, dim);
            assert!((v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-14);
        }
    }
}

//! Reference unitaries, spectral distances and error-bound checks.

use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::{Axis, Circuit, GateCounts, GateKind, QubitId};
use crate::error::Result;
use crate::exact::{synth_diagonal_exact, synth_multiplexor_exact};
use crate::oracular::{
    synth_diagonal_oracular, synth_multiplexor_oracular, MultiplexorSpec, OracularCircuit,
    SynthTarget,
};
use crate::quantizer::{dequantize, per_angle_error, AngleVector, QuantizeMode};
use crate::sim::{check_dims, gate_matrix, Simulator, UnitaryMatrix};

/// Amplitude allowed to remain in ancilla sectors; restoration is exact so
/// only rounding noise is tolerated.
pub const LEAK_TOLERANCE: f64 = 1e-12;
/// Slack on the analytic bound for rounding in the singular value solver.
pub const BOUND_SLACK: f64 = 1e-12;
/// Max-entry tolerance for exact constructions.
pub const EXACT_TOLERANCE: f64 = 1e-10;

/// `Σ_b exp(iθ_b σ_axis) ⊗ P_b`: block diagonal with one 2×2 block per
/// control value, tau as the least significant qubit.
pub fn reference_multiplexor(angles: &AngleVector, axis: Axis) -> UnitaryMatrix {
    let n = angles.len();
    let mut m = DMatrix::<Complex64>::zeros(2 * n, 2 * n);
    for (b, &theta) in angles.as_slice().iter().enumerate() {
        let block = gate_matrix(GateKind::rotation(axis, theta));
        for (r, row) in block.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m[(2 * b + r, 2 * b + c)] = *v;
            }
        }
    }
    UnitaryMatrix::from_matrix(m)
}

/// `diag(e^{iθ_b})` on the control register.
pub fn reference_diagonal(angles: &AngleVector) -> UnitaryMatrix {
    let phases: Vec<Complex64> = angles
        .as_slice()
        .iter()
        .map(|&t| Complex64::from_polar(1.0, t))
        .collect();
    UnitaryMatrix::from_diagonal(&phases)
}

/// Generator `P_b(β) ⊗ σ_axis(τ)` of the multiplexor's exponential form.
fn projector_generator(n_rows: usize, b: usize, axis: Axis) -> DMatrix<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let sigma = match axis {
        Axis::X => [[zero, one], [one, zero]],
        Axis::Y => [[zero, -i], [i, zero]],
        Axis::Z => [[one, zero], [zero, -one]],
    };
    let mut g = DMatrix::zeros(2 * n_rows, 2 * n_rows);
    for r in 0..2 {
        for c in 0..2 {
            g[(2 * b + r, 2 * b + c)] = sigma[r][c];
        }
    }
    g
}

/// `exp(i Σ_b θ_b σ_axis(τ) P_b(β))` by matrix exponential.
pub fn multiplexor_exponential_form(angles: &AngleVector, axis: Axis) -> UnitaryMatrix {
    let n = angles.len();
    let i = Complex64::new(0.0, 1.0);
    let generator = angles
        .as_slice()
        .iter()
        .enumerate()
        .fold(DMatrix::zeros(2 * n, 2 * n), |acc, (b, &t)| {
            acc + projector_generator(n, b, axis) * (i * t)
        });
    UnitaryMatrix::from_matrix(expm(&generator))
}

/// `Π_b exp(iθ_b σ_axis(τ) P_b(β))`, each factor by matrix exponential.
pub fn multiplexor_product_form(angles: &AngleVector, axis: Axis) -> UnitaryMatrix {
    let n = angles.len();
    let i = Complex64::new(0.0, 1.0);
    let product = angles
        .as_slice()
        .iter()
        .enumerate()
        .fold(DMatrix::identity(2 * n, 2 * n), |acc, (b, &t)| {
            acc * expm(&(projector_generator(n, b, axis) * (i * t)))
        });
    UnitaryMatrix::from_matrix(product)
}

/// Matrix exponential by scaling and squaring of a Taylor series.
fn expm(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = m.nrows();
    let norm = m
        .row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 {
        libm::ceil(libm::log2(norm / 0.5)) as i32
    } else {
        0
    };
    let scaled = m * Complex64::new(libm::ldexp(1.0, -squarings), 0.0);
    let mut result = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..=24 {
        term = &term * &scaled * Complex64::new(1.0 / k as f64, 0.0);
        result += &term;
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Largest singular value of `a - b`.
pub fn spectral_distance(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<f64> {
    check_dims(a, b)?;
    let diff = a.matrix() - b.matrix();
    Ok(diff.singular_values().iter().copied().fold(0.0, f64::max))
}

/// Spectral distance between two multiplexors with the same axis, from the
/// block structure: `max_b 2|sin((θ_b - θ̂_b)/2)|`.
pub fn multiplexor_distance(angles: &AngleVector, approx: &AngleVector) -> f64 {
    angles
        .as_slice()
        .iter()
        .zip(approx.as_slice())
        .map(|(&t, &h)| per_angle_error(t, h))
        .fold(0.0, f64::max)
}

/// Outcome of comparing a circuit against a reference unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Verification {
    /// Spectral distance between the reference and the restricted circuit.
    pub realized_error: f64,
    /// Largest amplitude norm left outside the ancilla-zero sector.
    pub leak: f64,
}

/// Outcome of a bound check on an oracular synthesis.
#[derive(Clone, Debug, PartialEq)]
pub struct SynthReport {
    pub target: SynthTarget,
    pub n_beta: usize,
    pub n_alpha: usize,
    pub mode: QuantizeMode,
    pub bound: f64,
    pub realized_error: f64,
    pub leak: f64,
    pub counts: GateCounts,
    pub pass: bool,
}

/// Reference unitary an exact or oracular circuit is checked against.
pub fn reference_for(target: SynthTarget, angles: &AngleVector) -> UnitaryMatrix {
    match target {
        SynthTarget::Multiplexor => reference_multiplexor(angles, Axis::Y),
        SynthTarget::Diagonal => reference_diagonal(angles),
    }
}

impl Simulator {
    /// Restricts `circuit` to ancillas in `|0⟩` and measures its spectral
    /// distance from `reference`.
    pub fn verify_circuit(
        &self,
        circuit: &Circuit,
        ancillas: &[QubitId],
        reference: &UnitaryMatrix,
    ) -> Result<Verification> {
        let (restricted, leak) = self.restricted_unitary(circuit, ancillas)?;
        let realized_error = spectral_distance(reference, &restricted)?;
        Ok(Verification {
            realized_error,
            leak,
        })
    }

    /// Checks a synthesized oracular circuit against the exact target built
    /// from `angles`.
    pub fn check_oracular(
        &self,
        oc: &OracularCircuit,
        angles: &AngleVector,
    ) -> Result<SynthReport> {
        let reference = reference_for(oc.target, angles);
        let v = self.verify_circuit(&oc.circuit, &oc.ancillas(), &reference)?;
        Ok(SynthReport {
            target: oc.target,
            n_beta: angles.n_beta(),
            n_alpha: oc.n_alpha,
            mode: oc.mode,
            bound: oc.bound,
            realized_error: v.realized_error,
            leak: v.leak,
            counts: oc.circuit.count_gates(),
            pass: v.realized_error <= oc.bound + BOUND_SLACK && v.leak <= LEAK_TOLERANCE,
        })
    }

    /// Synthesizes the oracular circuit for `target` and checks its
    /// realized error against the analytic bound of `mode`.
    pub fn check_bound(
        &self,
        target: SynthTarget,
        angles: &AngleVector,
        n_alpha: usize,
        mode: QuantizeMode,
    ) -> Result<SynthReport> {
        let oc = match target {
            SynthTarget::Multiplexor => {
                synth_multiplexor_oracular(&MultiplexorSpec::ry(angles.clone()), n_alpha, mode)?
            }
            SynthTarget::Diagonal => synth_diagonal_oracular(angles, n_alpha, mode)?,
        };
        self.check_oracular(&oc, angles)
    }

    /// Verifies the exact construction for `target`. The bound is
    /// [`EXACT_TOLERANCE`].
    pub fn check_exact(
        &self,
        target: SynthTarget,
        angles: &AngleVector,
    ) -> Result<(Circuit, Verification, bool)> {
        let (circuit, ancillas) = match target {
            SynthTarget::Multiplexor => (
                synth_multiplexor_exact(&MultiplexorSpec::ry(angles.clone()))?,
                Vec::new(),
            ),
            SynthTarget::Diagonal => (synth_diagonal_exact(angles)?, alloc::vec![QubitId::tau()]),
        };
        let v = self.verify_circuit(&circuit, &ancillas, &reference_for(target, angles))?;
        let pass = v.realized_error <= EXACT_TOLERANCE && v.leak <= LEAK_TOLERANCE;
        Ok((circuit, v, pass))
    }
}

/// Quantized angles `θ̂` the oracular circuit realizes.
pub fn realized_angles(oc: &OracularCircuit) -> AngleVector {
    dequantize(&oc.bit_table)
}

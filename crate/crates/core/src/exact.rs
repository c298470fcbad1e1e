//! Exact multiplexor compilation with `2^n_beta` CNOTs.
//!
//! The target sees rotations `R(φ_0) … R(φ_{N-1})` interleaved with CNOTs
//! whose controls walk the reflected Gray code and return to zero. For
//! control value `b`, `R(φ_j)` is conjugated by `X` exactly when
//! `⟨g(j), b⟩` is odd, so the net angle is `Σ_j (-1)^{⟨g(j), b⟩} φ_j`.
//! Inverting that Walsh system gives `φ_j = 2^{-n} Σ_b (-1)^{⟨g(j), b⟩} θ_b`.

use alloc::vec::Vec;

use crate::circuit::{Axis, Circuit, Gate, QubitId};
use crate::error::{Error, Result};
use crate::oracular::{conjugate_by_x_quarter_turn, MultiplexorSpec};
use crate::quantizer::AngleVector;

/// Reflected binary Gray code.
pub fn gray_code(j: usize) -> usize {
    j ^ (j >> 1)
}

/// Rotation angles and CNOT controls of the exact decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct GrayPlan {
    pub n_beta: usize,
    /// `φ_j`, applied before the `j`-th CNOT.
    pub rotation_angles: Vec<f64>,
    /// Beta index controlling the `j`-th CNOT; the last entry closes the cycle.
    pub cnot_controls: Vec<usize>,
}

impl GrayPlan {
    pub fn new(angles: &AngleVector) -> Self {
        let n_beta = angles.n_beta();
        let len = angles.len();
        let mut spectrum = angles.as_slice().to_vec();
        walsh_hadamard(&mut spectrum);
        let norm = 1.0 / len as f64;
        let rotation_angles = (0..len).map(|j| spectrum[gray_code(j)] * norm).collect();
        let cnot_controls = (0..len)
            .map(|j| (gray_code(j) ^ gray_code((j + 1) % len)).trailing_zeros() as usize)
            .collect();
        GrayPlan {
            n_beta,
            rotation_angles,
            cnot_controls,
        }
    }
}

/// Unnormalized in-place Walsh-Hadamard transform:
/// `out[c] = Σ_b (-1)^{popcount(c & b)} in[b]`.
fn walsh_hadamard(data: &mut [f64]) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let mut h = 1;
    while h < n {
        for block in data.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Exact Y (or Z) multiplexor: alternating rotations on tau and CNOTs from
/// the beta register, `2^n_beta` of each.
pub fn synth_multiplexor_exact(spec: &MultiplexorSpec) -> Result<Circuit> {
    if spec.axis == Axis::X {
        return Err(Error::UnsupportedAxis(Axis::X));
    }
    let plan = GrayPlan::new(&spec.angles);
    let tau = QubitId::tau();
    let mut c = Circuit::on_qubits((0..plan.n_beta).map(QubitId::beta));
    for (&phi, &ctrl) in plan.rotation_angles.iter().zip(&plan.cnot_controls) {
        c.push(Gate::rot(spec.axis, phi, tau));
        c.push(Gate::cnot(QubitId::beta(ctrl), tau)?);
    }
    Ok(c)
}

/// Exact `diag(e^{iθ_b})` on the beta register, with tau as a `|0⟩` ancilla.
pub fn synth_diagonal_exact(angles: &AngleVector) -> Result<Circuit> {
    let inner = synth_multiplexor_exact(&MultiplexorSpec::ry(angles.clone()))?;
    Ok(conjugate_by_x_quarter_turn(&inner))
}

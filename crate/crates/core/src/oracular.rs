//! Oracular approximation of multiplexors and diagonal unitaries.
//!
//! The angles are quantized into a [`BitTable`]. An oracle `Ω` writes the
//! bits of `θ̂_b` into the alpha ancillas, a fixed set of singly controlled
//! rotations applies `exp(i 2π 0.n(α_1)…n(α_N) σ)` to tau, and a second `Ω`
//! uncomputes the ancillas:
//!
//! ```text
//! beta  ──■────────────■──
//! alpha ──Ω───■──■──■──Ω──
//! tau   ──────R──R──R─────
//! ```

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, TAU};

use crate::circuit::{Axis, Circuit, ControlSpec, Gate, GateKind, Polarity, QubitId, Register};
use crate::error::{Error, Result};
use crate::quantizer::{quantize, AngleVector, BitTable, QuantizeMode};

/// A multiplexor `Σ_b exp(iθ_b σ_axis(τ)) P_b(β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplexorSpec {
    pub angles: AngleVector,
    pub axis: Axis,
}

impl MultiplexorSpec {
    pub fn ry(angles: AngleVector) -> Self {
        MultiplexorSpec {
            angles,
            axis: Axis::Y,
        }
    }

    pub fn n_beta(&self) -> usize {
        self.angles.n_beta()
    }
}

/// What a synthesized circuit implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SynthTarget {
    Multiplexor,
    Diagonal,
}

impl SynthTarget {
    pub fn name(self) -> &'static str {
        match self {
            SynthTarget::Multiplexor => "multiplexor",
            SynthTarget::Diagonal => "diagonal",
        }
    }
}

/// Result of oracular synthesis.
#[derive(Clone, Debug, PartialEq)]
pub struct OracularCircuit {
    pub circuit: Circuit,
    pub n_alpha: usize,
    pub mode: QuantizeMode,
    pub bit_table: BitTable,
    pub target: SynthTarget,
    /// Analytic bound on the spectral error of the restricted circuit.
    pub bound: f64,
}

impl OracularCircuit {
    /// Qubits that start and end in `|0⟩`: the alphas, plus tau for a diagonal.
    pub fn ancillas(&self) -> Vec<QubitId> {
        self.circuit
            .qubits()
            .filter(|q| match q.register {
                Register::Beta => false,
                Register::Alpha => true,
                Register::Tau => self.target == SynthTarget::Diagonal,
            })
            .collect()
    }
}

fn register_qubits(c: &mut Circuit, n_beta: usize, n_alpha: usize) {
    (0..n_beta).for_each(|j| c.add_qubit(QubitId::beta(j)));
    (1..=n_alpha).for_each(|k| c.add_qubit(QubitId::alpha(k)));
}

/// `Ω(α_k)`: one multi-controlled `X` on `α_k` per row `b` with `a[b][k] = 1`,
/// in increasing `b`. Control `β_j` is positive when bit `j` of `b` is set.
pub fn build_oracle(table: &BitTable, k: usize) -> Result<Circuit> {
    if !(1..=table.n_alpha()).contains(&k) {
        return Err(Error::OracleIndex {
            k,
            n_alpha: table.n_alpha(),
        });
    }
    let n_beta = table.n_beta();
    let mut c = Circuit::new();
    (0..n_beta).for_each(|j| c.add_qubit(QubitId::beta(j)));
    c.add_qubit(QubitId::alpha(k));
    for b in (0..table.num_rows()).filter(|&b| table.bit(b, k)) {
        let controls = (0..n_beta)
            .map(|j| ControlSpec {
                qubit: QubitId::beta(j),
                polarity: Polarity::for_bit((b >> j) & 1 == 1),
            })
            .collect();
        c.push(Gate::new(GateKind::X, QubitId::alpha(k), controls)?);
    }
    Ok(c)
}

/// `Ω = Π_k Ω(α_k)`, emitted for `k = 1..=n_alpha`.
pub fn build_full_oracle(table: &BitTable) -> Circuit {
    let mut c = Circuit::new();
    register_qubits(&mut c, table.n_beta(), table.n_alpha());
    (1..=table.n_alpha()).fold(c, |acc, k| {
        acc.compose(&build_oracle(table, k).expect("k is in range"))
    })
}

/// `exp(i 2π Σ_k n(α_k) 2^{-k} σ_axis(τ))` as `n_alpha` rotations on tau, the
/// `k`-th controlled by `α_k` with angle `2π / 2^k`.
pub fn build_fraction_rotation(n_alpha: usize, axis: Axis) -> Circuit {
    let mut c = Circuit::new();
    c.add_qubit(QubitId::tau());
    for k in 1..=n_alpha {
        let angle = TAU / libm::ldexp(1.0, k as i32);
        let gate = Gate::new(
            GateKind::rotation(axis, angle),
            QubitId::tau(),
            alloc::vec![ControlSpec::positive(QubitId::alpha(k))],
        )
        .expect("alpha control differs from tau target");
        c.push(gate);
    }
    c
}

/// `Ω · R · Ω`, the oracular approximation of a Y or Z multiplexor. Acting on
/// inputs with the alpha ancillas in `|0⟩` it equals the multiplexor with the
/// quantized angles and returns the ancillas to `|0⟩`.
pub fn synth_multiplexor_oracular(
    spec: &MultiplexorSpec,
    n_alpha: usize,
    mode: QuantizeMode,
) -> Result<OracularCircuit> {
    if spec.axis == Axis::X {
        return Err(Error::UnsupportedAxis(Axis::X));
    }
    let table = quantize(&spec.angles, n_alpha, mode)?;
    let oracle = build_full_oracle(&table);
    let circuit = oracle
        .compose(&build_fraction_rotation(n_alpha, spec.axis))
        .compose(&oracle);
    Ok(OracularCircuit {
        circuit,
        n_alpha,
        mode,
        bit_table: table,
        target: SynthTarget::Multiplexor,
        bound: mode.bound(n_alpha),
    })
}

/// Oracular approximation of `D = diag(e^{iθ_b})`, using tau as an extra
/// ancilla: `RotX(π/4)` on tau, the oracular Y multiplexor, then `RotX(-π/4)`.
pub fn synth_diagonal_oracular(
    angles: &AngleVector,
    n_alpha: usize,
    mode: QuantizeMode,
) -> Result<OracularCircuit> {
    let inner = synth_multiplexor_oracular(&MultiplexorSpec::ry(angles.clone()), n_alpha, mode)?;
    let circuit = conjugate_by_x_quarter_turn(&inner.circuit);
    Ok(OracularCircuit {
        circuit,
        target: SynthTarget::Diagonal,
        ..inner
    })
}

/// Wraps a circuit with `RotX(π/4)` before and `RotX(-π/4)` after on tau,
/// turning a Y multiplexor into a Z multiplexor.
pub(crate) fn conjugate_by_x_quarter_turn(inner: &Circuit) -> Circuit {
    let pre = Circuit::from_gates([Gate::rot(Axis::X, FRAC_PI_4, QubitId::tau())]);
    let post = Circuit::from_gates([Gate::rot(Axis::X, -FRAC_PI_4, QubitId::tau())]);
    pre.compose(inner).compose(&post)
}

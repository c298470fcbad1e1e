//! Synthesis of quantum multiplexors and diagonal unitaries.
//!
//! Two compilers are provided for an `R_y` multiplexor
//! `M = Σ_b exp(iθ_b σ_y(τ)) P_b(β)`:
//!
//! * [`oracular`]: angles are quantized to `n_alpha` fractional bits, loaded
//!   into ancillas by a quantum oracle, applied to the target through fixed
//!   controlled rotations, and uncomputed. The spectral error is at most
//!   `2π / 2^n_alpha` with truncation.
//! * [`exact`]: the Gray-code decomposition with `2^n_beta` CNOTs.
//!
//! Diagonal unitaries `diag(e^{iθ_b})` reduce to either compiler through an
//! extra target ancilla. [`sim`] and [`verify`] provide a dense simulator
//! and the spectral-norm checks.
//!
//! Rotations use `Rot(θ) = exp(iθσ)` throughout; see [`circuit`] for the
//! ordering conventions.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod circuit;
pub mod error;
pub mod exact;
pub mod oracular;
pub mod quantizer;
pub mod sim;
pub mod verify;

pub use circuit::{
    Axis, Circuit, ControlSpec, CostWeights, Gate, GateClass, GateCounts, GateKind, Polarity,
    QubitId, Register,
};
pub use error::{Error, Result};
pub use exact::{gray_code, synth_diagonal_exact, synth_multiplexor_exact, GrayPlan};
pub use oracular::{
    build_fraction_rotation, build_full_oracle, build_oracle, synth_diagonal_oracular,
    synth_multiplexor_oracular, MultiplexorSpec, OracularCircuit, SynthTarget,
};
pub use quantizer::{dequantize, per_angle_error, quantize, AngleVector, BitTable, QuantizeMode};
pub use sim::{QubitLayout, Simulator, StateVector, UnitaryMatrix};
pub use verify::{
    multiplexor_distance, reference_diagonal, reference_multiplexor, spectral_distance,
    SynthReport, Verification,
};

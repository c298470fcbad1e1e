//! Dense state-vector and unitary simulation.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::{Circuit, Gate, GateKind, QubitId};
use crate::error::{Error, Result};

/// Default limit on the number of simulated qubits.
pub const DEFAULT_QUBIT_CAP: usize = 12;

/// Unitaries up to this dimension are checked for `U†U = I` when built.
const UNITARITY_CHECK_MAX_DIM: usize = 256;

/// Tolerance of the unitarity check, max-entry.
pub const UNITARITY_TOLERANCE: f64 = 1e-10;

type Mat2 = [[Complex64; 2]; 2];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The 2×2 matrix of a gate's kind, ignoring controls.
/// Rotations are `exp(iθσ)`.
pub fn gate_matrix(kind: GateKind) -> Mat2 {
    match kind {
        GateKind::RotX(t) => {
            let (s, co) = libm::sincos(t);
            [[c(co, 0.0), c(0.0, s)], [c(0.0, s), c(co, 0.0)]]
        }
        GateKind::RotY(t) => {
            let (s, co) = libm::sincos(t);
            [[c(co, 0.0), c(s, 0.0)], [c(-s, 0.0), c(co, 0.0)]]
        }
        GateKind::RotZ(t) => {
            let (s, co) = libm::sincos(t);
            [[c(co, s), c(0.0, 0.0)], [c(0.0, 0.0), c(co, -s)]]
        }
        GateKind::X | GateKind::Cnot => [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]],
    }
}

/// Dense square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(DMatrix<Complex64>);

impl UnitaryMatrix {
    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix(DMatrix::identity(dim, dim))
    }

    /// Wraps a matrix without checking unitarity.
    pub fn from_matrix(m: DMatrix<Complex64>) -> Self {
        assert!(m.is_square(), "unitary must be square");
        UnitaryMatrix(m)
    }

    pub fn from_diagonal(entries: &[Complex64]) -> Self {
        let n = entries.len();
        UnitaryMatrix(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                entries[i]
            } else {
                c(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        UnitaryMatrix(self.0.adjoint())
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &UnitaryMatrix) -> Self {
        UnitaryMatrix(&self.0 * &other.0)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> Result<f64> {
        check_dims(self, other)?;
        Ok(self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// `max |U†U - I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let prod = self.0.adjoint() * &self.0;
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod[(i, j)] - c(expected, 0.0)).norm());
            }
        }
        worst
    }

    /// Largest modulus of an off-diagonal entry.
    pub fn max_off_diagonal(&self) -> f64 {
        let n = self.dim();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| self.0[(i, j)].norm())
            .fold(0.0, f64::max)
    }

    /// All singular values, in no particular order.
    pub fn singular_values(&self) -> Vec<f64> {
        self.0.clone().singular_values().iter().copied().collect()
    }
}

pub(crate) fn check_dims(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    Ok(())
}

/// Dense state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector(Vec<Complex64>);

impl StateVector {
    /// `|index⟩` in a space of dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(dim.is_power_of_two() && index < dim);
        let mut amps = vec![c(0.0, 0.0); dim];
        amps[index] = c(1.0, 0.0);
        StateVector(amps)
    }

    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        assert!(amps.len().is_power_of_two());
        StateVector(amps)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.0.iter().map(|a| a.norm_sqr()).sum())
    }
}

/// Maps qubits to bit positions of a basis-state index: beta by descending
/// index, then alpha by ascending index, then tau, most significant first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitLayout {
    order: Vec<QubitId>,
}

impl QubitLayout {
    pub fn new(qubits: impl IntoIterator<Item = QubitId>) -> Self {
        let mut order: Vec<QubitId> = qubits.into_iter().collect();
        order.sort_by_key(QubitId::significance_key);
        order.dedup();
        QubitLayout { order }
    }

    pub fn for_circuit(circuit: &Circuit) -> Self {
        Self::new(circuit.qubits())
    }

    /// Qubits from most to least significant.
    pub fn order(&self) -> &[QubitId] {
        &self.order
    }

    pub fn num_qubits(&self) -> usize {
        self.order.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.order.len()
    }

    /// Single-bit mask of `q`, if present.
    pub fn mask(&self, q: QubitId) -> Option<usize> {
        let pos = self.order.iter().position(|&o| o == q)?;
        Some(1 << (self.order.len() - 1 - pos))
    }
}

struct CompiledGate {
    matrix: Mat2,
    target: usize,
    control_mask: usize,
    control_value: usize,
}

impl CompiledGate {
    fn new(gate: &Gate, layout: &QubitLayout) -> Self {
        let mask = |q| layout.mask(q).expect("gate qubit belongs to the circuit");
        let mut control_mask = 0;
        let mut control_value = 0;
        for ctl in gate.controls() {
            let m = mask(ctl.qubit);
            control_mask |= m;
            if ctl.polarity.active_value() {
                control_value |= m;
            }
        }
        CompiledGate {
            matrix: gate_matrix(gate.kind()),
            target: mask(gate.target()),
            control_mask,
            control_value,
        }
    }

    fn apply(&self, amps: &mut [Complex64]) {
        let [[u00, u01], [u10, u11]] = self.matrix;
        for i in 0..amps.len() {
            if i & self.target != 0 || i & self.control_mask != self.control_value {
                continue;
            }
            let j = i | self.target;
            let (a, b) = (amps[i], amps[j]);
            amps[i] = u00 * a + u01 * b;
            amps[j] = u10 * a + u11 * b;
        }
    }
}

/// Dense simulator with a cap on the number of qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Simulator {
    qubit_cap: usize,
}

impl Default for Simulator {
    fn default() -> Self {
        Simulator {
            qubit_cap: DEFAULT_QUBIT_CAP,
        }
    }
}

impl Simulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_qubit_cap(qubit_cap: usize) -> Self {
        // Dimensions must still fit a usize shift.
        Simulator {
            qubit_cap: qubit_cap.min(usize::BITS as usize - 2),
        }
    }

    pub fn qubit_cap(&self) -> usize {
        self.qubit_cap
    }

    fn layout(&self, circuit: &Circuit) -> Result<QubitLayout> {
        let count = circuit.num_qubits();
        if count > self.qubit_cap {
            return Err(Error::QubitCap {
                count,
                cap: self.qubit_cap,
            });
        }
        Ok(QubitLayout::for_circuit(circuit))
    }

    fn compile(circuit: &Circuit, layout: &QubitLayout) -> Vec<CompiledGate> {
        circuit
            .gates()
            .iter()
            .map(|g| CompiledGate::new(g, layout))
            .collect()
    }

    /// Applies `circuit` to a state laid out by [`QubitLayout::for_circuit`].
    pub fn apply(&self, circuit: &Circuit, state: &mut StateVector) -> Result<()> {
        let layout = self.layout(circuit)?;
        if state.dim() != layout.dim() {
            return Err(Error::DimensionMismatch {
                left: layout.dim(),
                right: state.dim(),
            });
        }
        for g in Self::compile(circuit, &layout) {
            g.apply(&mut state.0);
        }
        Ok(())
    }

    /// Full unitary of `circuit` over all of its qubits.
    pub fn circuit_to_unitary(&self, circuit: &Circuit) -> Result<UnitaryMatrix> {
        let layout = self.layout(circuit)?;
        let dim = layout.dim();
        let gates = Self::compile(circuit, &layout);
        let mut m = DMatrix::<Complex64>::identity(dim, dim);
        for col in 0..dim {
            let column = m.column_mut(col);
            let amps = column.data.into_slice_mut();
            gates.iter().for_each(|g| g.apply(amps));
        }
        let u = UnitaryMatrix(m);
        if dim <= UNITARITY_CHECK_MAX_DIM {
            let defect = u.unitarity_defect();
            if defect > UNITARITY_TOLERANCE {
                return Err(Error::NotUnitary(defect));
            }
        }
        Ok(u)
    }

    /// Applies `circuit` to every basis state whose ancillas are `|0⟩`.
    ///
    /// Returns the block of the unitary on the remaining qubits (ordered by
    /// the usual layout) and the largest amplitude norm left in any sector
    /// with a nonzero ancilla.
    pub fn restricted_unitary(
        &self,
        circuit: &Circuit,
        ancillas: &[QubitId],
    ) -> Result<(UnitaryMatrix, f64)> {
        if let Some(q) = ancillas.iter().find(|q| !circuit.contains_qubit(q)) {
            return Err(Error::UnknownAncilla(*q));
        }
        let layout = self.layout(circuit)?;
        let gates = Self::compile(circuit, &layout);
        let system = QubitLayout::new(circuit.qubits().filter(|q| !ancillas.contains(q)));
        let system_masks: Vec<usize> = system
            .order()
            .iter()
            .map(|&q| layout.mask(q).expect("system qubit in layout"))
            .collect();
        let n_sys = system_masks.len();
        // Full index of system basis state s, ancillas zero.
        let embed = |s: usize| -> usize {
            system_masks
                .iter()
                .enumerate()
                .filter(|(pos, _)| s & (1 << (n_sys - 1 - pos)) != 0)
                .fold(0, |acc, (_, m)| acc | m)
        };
        let ancilla_mask = ancillas
            .iter()
            .map(|&q| layout.mask(q).expect("checked above"))
            .fold(0, |a, m| a | m);

        let sys_dim = system.dim();
        let mut out = DMatrix::<Complex64>::zeros(sys_dim, sys_dim);
        let mut leak: f64 = 0.0;
        let mut amps = vec![c(0.0, 0.0); layout.dim()];
        for col in 0..sys_dim {
            amps.iter_mut().for_each(|a| *a = c(0.0, 0.0));
            amps[embed(col)] = c(1.0, 0.0);
            gates.iter().for_each(|g| g.apply(&mut amps));
            for row in 0..sys_dim {
                out[(row, col)] = amps[embed(row)];
            }
            let leaked: f64 = amps
                .iter()
                .enumerate()
                .filter(|(i, _)| i & ancilla_mask != 0)
                .map(|(_, a)| a.norm_sqr())
                .fold(0.0, |acc, x| acc + x);
            leak = leak.max(libm::sqrt(leaked));
        }
        Ok((UnitaryMatrix(out), leak))
    }
}

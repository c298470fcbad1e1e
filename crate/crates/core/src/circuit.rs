//! Circuit intermediate representation.
//!
//! Conventions used throughout the crate:
//!
//! * Rotations follow `RotY(θ) = exp(iθσ_y)` (likewise for X and Z). There is
//!   no half angle and the exponent has a positive sign, so `RotY(θ)` is the
//!   common `Ry(-2θ)`.
//! * `gates[0]` acts first. The unitary of a circuit is the product of its
//!   gate matrices in reverse list order.
//! * In tensor products the beta qubits come first by descending index, then
//!   the alpha qubits by ascending index, then tau. The first qubit in that
//!   order is the most significant bit of a basis-state index, so for
//!   controls only, `|b⟩` with `b = (b_{n-1}, …, b_0)` has index `b`.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Qubit register.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Register {
    /// Control register of the multiplexor, indexed from 0.
    Beta,
    /// Ancillas holding the quantized angle, indexed from 1.
    Alpha,
    /// Rotation target, always index 0.
    Tau,
}

/// A labeled qubit.
///
/// The derived ordering (beta, then alpha, then tau, each by ascending
/// index) is the canonical order of [`Circuit::qubits`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitId {
    pub register: Register,
    pub index: usize,
}

impl QubitId {
    /// Checked constructor: alpha indices start at 1 and tau only has index 0.
    pub fn new(register: Register, index: usize) -> Result<Self> {
        let q = QubitId { register, index };
        match register {
            Register::Beta => Ok(q),
            Register::Alpha if index >= 1 => Ok(q),
            Register::Tau if index == 0 => Ok(q),
            _ => Err(Error::InvalidQubit(q)),
        }
    }

    pub const fn beta(index: usize) -> Self {
        QubitId {
            register: Register::Beta,
            index,
        }
    }

    /// Panics on `index == 0`.
    pub const fn alpha(index: usize) -> Self {
        assert!(index >= 1, "alpha qubits are indexed from 1");
        QubitId {
            register: Register::Alpha,
            index,
        }
    }

    pub const fn tau() -> Self {
        QubitId {
            register: Register::Tau,
            index: 0,
        }
    }

    /// Key for tensor-product order: smaller keys are more significant.
    pub(crate) fn significance_key(&self) -> (u8, isize) {
        match self.register {
            Register::Beta => (0, -(self.index as isize)),
            Register::Alpha => (1, self.index as isize),
            Register::Tau => (2, 0),
        }
    }
}

impl fmt::Display for QubitId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.register {
            Register::Beta => write!(f, "beta{}", self.index),
            Register::Alpha => write!(f, "alpha{}", self.index),
            Register::Tau => f.write_str("tau"),
        }
    }
}

/// Which basis state of the control qubit enables the gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    /// Fires on `|1⟩` (projector `n = P_1`, drawn as a filled dot).
    Positive,
    /// Fires on `|0⟩` (projector `1 - n = P_0`, drawn as an open circle).
    Negative,
}

impl Polarity {
    /// The qubit value on which the control fires.
    pub fn active_value(self) -> bool {
        matches!(self, Polarity::Positive)
    }

    pub fn for_bit(bit: bool) -> Self {
        if bit {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ControlSpec {
    pub qubit: QubitId,
    pub polarity: Polarity,
}

impl ControlSpec {
    pub fn positive(qubit: QubitId) -> Self {
        ControlSpec {
            qubit,
            polarity: Polarity::Positive,
        }
    }

    pub fn negative(qubit: QubitId) -> Self {
        ControlSpec {
            qubit,
            polarity: Polarity::Negative,
        }
    }
}

/// Rotation axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Gate operation. Rotation angles are radians with `Rot*(θ) = exp(iθσ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    RotX(f64),
    RotY(f64),
    RotZ(f64),
    X,
    /// An `X` with exactly one positive control, kept apart for counting.
    Cnot,
}

impl GateKind {
    pub fn rotation(axis: Axis, angle: f64) -> Self {
        match axis {
            Axis::X => GateKind::RotX(angle),
            Axis::Y => GateKind::RotY(angle),
            Axis::Z => GateKind::RotZ(angle),
        }
    }

    pub fn is_rotation(&self) -> bool {
        matches!(
            self,
            GateKind::RotX(_) | GateKind::RotY(_) | GateKind::RotZ(_)
        )
    }

    fn inverse(self) -> Self {
        match self {
            GateKind::RotX(a) => GateKind::RotX(-a),
            GateKind::RotY(a) => GateKind::RotY(-a),
            GateKind::RotZ(a) => GateKind::RotZ(-a),
            other => other,
        }
    }
}

/// A possibly controlled single-target gate.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    kind: GateKind,
    target: QubitId,
    controls: Vec<ControlSpec>,
}

impl Gate {
    /// Rejects controls on the target, repeated control qubits, and `Cnot`
    /// gates without exactly one positive control.
    pub fn new(kind: GateKind, target: QubitId, controls: Vec<ControlSpec>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &controls {
            if c.qubit == target {
                return Err(Error::ControlIsTarget(target));
            }
            if !seen.insert(c.qubit) {
                return Err(Error::DuplicateControl(c.qubit));
            }
        }
        if kind == GateKind::Cnot
            && !(controls.len() == 1 && controls[0].polarity == Polarity::Positive)
        {
            return Err(Error::MalformedCnot);
        }
        Ok(Gate {
            kind,
            target,
            controls,
        })
    }

    pub fn rot(axis: Axis, angle: f64, target: QubitId) -> Self {
        Gate {
            kind: GateKind::rotation(axis, angle),
            target,
            controls: Vec::new(),
        }
    }

    pub fn cnot(control: QubitId, target: QubitId) -> Result<Self> {
        Gate::new(
            GateKind::Cnot,
            target,
            alloc::vec![ControlSpec::positive(control)],
        )
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn target(&self) -> QubitId {
        self.target
    }

    pub fn controls(&self) -> &[ControlSpec] {
        &self.controls
    }

    /// Target followed by the control qubits.
    pub fn qubits(&self) -> impl Iterator<Item = QubitId> + '_ {
        core::iter::once(self.target).chain(self.controls.iter().map(|c| c.qubit))
    }

    pub fn inverse(&self) -> Self {
        Gate {
            kind: self.kind.inverse(),
            target: self.target,
            controls: self.controls.clone(),
        }
    }

    /// Rewrites a singly positively controlled `X` as `Cnot`.
    pub fn to_cnot_form(&self) -> Self {
        let mut g = self.clone();
        if g.kind == GateKind::X
            && g.controls.len() == 1
            && g.controls[0].polarity == Polarity::Positive
        {
            g.kind = GateKind::Cnot;
        }
        g
    }

    /// Rewrites `Cnot` as a controlled `X`.
    pub fn to_x_form(&self) -> Self {
        let mut g = self.clone();
        if g.kind == GateKind::Cnot {
            g.kind = GateKind::X;
        }
        g
    }

    /// Cost class of this gate.
    pub fn class(&self) -> GateClass {
        let n = self.controls.len();
        match self.kind {
            GateKind::Cnot => GateClass::Cnot,
            GateKind::X if n == 1 && self.controls[0].polarity == Polarity::Positive => {
                GateClass::Cnot
            }
            GateKind::X => GateClass::Mcx(n),
            _ if n == 0 => GateClass::Rotation,
            _ => GateClass::ControlledRotation(n),
        }
    }
}

/// Gate classes used for counting and cost models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GateClass {
    Cnot,
    /// Uncontrolled rotation.
    Rotation,
    /// `X` with the given number of controls (any polarity), excluding CNOT.
    Mcx(usize),
    /// Rotation with the given number of controls.
    ControlledRotation(usize),
}

impl fmt::Display for GateClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateClass::Cnot => f.write_str("CNOT"),
            GateClass::Rotation => f.write_str("Rot"),
            GateClass::Mcx(n) => write!(f, "MCX({n})"),
            GateClass::ControlledRotation(n) => write!(f, "CRot({n})"),
        }
    }
}

impl core::str::FromStr for GateClass {
    type Err = ();

    fn from_str(s: &str) -> core::result::Result<Self, ()> {
        let s = s.trim();
        let upper = s.to_ascii_uppercase();
        let arg = |prefix: &str| -> Option<usize> {
            upper
                .strip_prefix(prefix)?
                .strip_suffix(')')?
                .trim()
                .parse()
                .ok()
        };
        match upper.as_str() {
            "CNOT" => Ok(GateClass::Cnot),
            "ROT" => Ok(GateClass::Rotation),
            _ => arg("MCX(")
                .map(GateClass::Mcx)
                .or_else(|| arg("CROT(").map(GateClass::ControlledRotation))
                .ok_or(()),
        }
    }
}

/// Gate counts keyed by class. Absent classes count zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GateCounts(BTreeMap<GateClass, usize>);

impl GateCounts {
    pub fn get(&self, class: GateClass) -> usize {
        self.0.get(&class).copied().unwrap_or(0)
    }

    pub fn add(&mut self, class: GateClass, n: usize) {
        if n > 0 {
            *self.0.entry(class).or_insert(0) += n;
        }
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GateClass, usize)> + '_ {
        self.0.iter().map(|(k, v)| (*k, *v))
    }

    /// Elementwise sum.
    pub fn merged(&self, other: &GateCounts) -> GateCounts {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add(k, v);
        }
        out
    }
}

/// Per-class cost weights with an optional fallback for unlisted classes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CostWeights {
    weights: BTreeMap<GateClass, f64>,
    fallback: Option<f64>,
}

impl CostWeights {
    pub fn new() -> Self {
        Self::default()
    }

    /// Charges one per CNOT and nothing for anything else.
    pub fn cnot_only() -> Self {
        CostWeights {
            weights: BTreeMap::from([(GateClass::Cnot, 1.0)]),
            fallback: Some(0.0),
        }
    }

    pub fn set(&mut self, class: GateClass, weight: f64) -> Result<()> {
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::InvalidWeight(class, weight));
        }
        self.weights.insert(class, weight);
        Ok(())
    }

    pub fn with(mut self, class: GateClass, weight: f64) -> Result<Self> {
        self.set(class, weight)?;
        Ok(self)
    }

    /// Weight used for classes without an explicit entry.
    pub fn with_fallback(mut self, weight: f64) -> Result<Self> {
        if !weight.is_finite() || weight < 0.0 {
            return Err(Error::InvalidWeight(GateClass::Rotation, weight));
        }
        self.fallback = Some(weight);
        Ok(self)
    }

    pub fn weight(&self, class: GateClass) -> Option<f64> {
        self.weights.get(&class).copied().or(self.fallback)
    }
}

/// An ordered gate list over a set of labeled qubits.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Circuit {
    qubits: BTreeSet<QubitId>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    /// Empty circuit over the given qubits.
    pub fn on_qubits(qubits: impl IntoIterator<Item = QubitId>) -> Self {
        Circuit {
            qubits: qubits.into_iter().collect(),
            gates: Vec::new(),
        }
    }

    pub fn from_gates(gates: impl IntoIterator<Item = Gate>) -> Self {
        let mut c = Circuit::new();
        c.extend(gates);
        c
    }

    /// Appends a gate, registering any qubit it touches.
    pub fn push(&mut self, gate: Gate) {
        self.qubits.extend(gate.qubits());
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        for g in gates {
            self.push(g);
        }
    }

    pub fn add_qubit(&mut self, qubit: QubitId) {
        self.qubits.insert(qubit);
    }

    /// Qubits in canonical order: beta, alpha, tau, each by ascending index.
    pub fn qubits(&self) -> impl ExactSizeIterator<Item = QubitId> + '_ {
        self.qubits.iter().copied()
    }

    pub fn num_qubits(&self) -> usize {
        self.qubits.len()
    }

    pub fn contains_qubit(&self, q: &QubitId) -> bool {
        self.qubits.contains(q)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Gates of `self` followed by gates of `other`, over the union of qubits.
    pub fn compose(&self, other: &Circuit) -> Circuit {
        let mut out = self.clone();
        out.qubits.extend(other.qubits.iter().copied());
        out.gates.extend(other.gates.iter().cloned());
        out
    }

    /// Reversed gate list with negated rotation angles.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            qubits: self.qubits.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    pub fn count_gates(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            counts.add(g.class(), 1);
        }
        counts
    }

    pub fn cnot_count(&self) -> usize {
        self.count_gates().get(GateClass::Cnot)
    }

    pub fn weighted_cost(&self, weights: &CostWeights) -> Result<f64> {
        self.gates.iter().try_fold(0.0, |acc, g| {
            let class = g.class();
            weights
                .weight(class)
                .map(|w| acc + w)
                .ok_or(Error::MissingWeight(class))
        })
    }

    /// Same circuit with every positively controlled single-control `X` as `Cnot`.
    pub fn to_cnot_form(&self) -> Circuit {
        Circuit {
            qubits: self.qubits.clone(),
            gates: self.gates.iter().map(Gate::to_cnot_form).collect(),
        }
    }

    /// Same circuit with every `Cnot` written as a controlled `X`.
    pub fn to_x_form(&self) -> Circuit {
        Circuit {
            qubits: self.qubits.clone(),
            gates: self.gates.iter().map(Gate::to_x_form).collect(),
        }
    }
}

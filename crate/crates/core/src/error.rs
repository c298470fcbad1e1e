use core::fmt;

use crate::circuit::{Axis, GateClass, QubitId};

/// Errors produced while building, synthesizing or simulating circuits.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A gate lists its own target among its controls.
    ControlIsTarget(QubitId),
    /// The same qubit appears twice in a control list.
    DuplicateControl(QubitId),
    /// A `Cnot` gate must carry exactly one positive control.
    MalformedCnot,
    /// Qubit label outside its register's index range.
    InvalidQubit(QubitId),
    /// A cost model has no weight for a gate class present in the circuit.
    MissingWeight(GateClass),
    /// Cost weights must be finite and non-negative.
    InvalidWeight(GateClass, f64),
    /// Angle vector length does not match `2^n_beta`.
    AngleCount { expected: usize, found: usize },
    /// Angle `index` is NaN or infinite.
    NonFiniteAngle { index: usize },
    /// The control register must hold at least one qubit.
    EmptyControlRegister,
    /// Multiplexor axis not supported by the synthesizer.
    UnsupportedAxis(Axis),
    /// Unsupported number of control qubits.
    ControlCount(usize),
    /// Unsupported number of fractional bits.
    Precision(usize),
    /// Oracle index outside `1..=n_alpha`.
    OracleIndex { k: usize, n_alpha: usize },
    /// A bit table with inconsistent row widths or row count.
    BitTableShape,
    /// Dense simulation would exceed the configured qubit cap.
    QubitCap { count: usize, cap: usize },
    /// Matrices of different dimension were compared.
    DimensionMismatch { left: usize, right: usize },
    /// A simulated matrix failed the unitarity check.
    NotUnitary(f64),
    /// An ancilla qubit is not part of the circuit.
    UnknownAncilla(QubitId),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ControlIsTarget(q) => write!(f, "control qubit {q} is also the gate target"),
            Error::DuplicateControl(q) => {
                write!(f, "qubit {q} appears more than once as a control")
            }
            Error::MalformedCnot => f.write_str("a CNOT needs exactly one positive control"),
            Error::InvalidQubit(q) => write!(f, "invalid qubit label {q}"),
            Error::MissingWeight(class) => write!(f, "no cost weight for gate class {class}"),
            Error::InvalidWeight(class, w) => {
                write!(
                    f,
                    "weight {w} for gate class {class} is not a finite non-negative number"
                )
            }
            Error::AngleCount { expected, found } => {
                write!(f, "expected {expected} angles, found {found}")
            }
            Error::NonFiniteAngle { index } => write!(f, "angle at index {index} is not finite"),
            Error::EmptyControlRegister => f.write_str("at least one control qubit is required"),
            Error::UnsupportedAxis(a) => write!(f, "unsupported multiplexor axis {a:?}"),
            Error::ControlCount(n) => write!(f, "unsupported number of control qubits: {n}"),
            Error::Precision(n) => write!(f, "unsupported number of fractional bits: {n}"),
            Error::OracleIndex { k, n_alpha } => {
                write!(f, "oracle index {k} outside 1..={n_alpha}")
            }
            Error::BitTableShape => f.write_str("bit table rows do not match its declared shape"),
            Error::QubitCap { count, cap } => {
                write!(f, "circuit has {count} qubits, simulation cap is {cap}")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "matrix dimensions differ: {left} vs {right}")
            }
            Error::NotUnitary(d) => write!(f, "matrix is not unitary (defect {d:e})"),
            Error::UnknownAncilla(q) => write!(f, "ancilla {q} is not a qubit of the circuit"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;

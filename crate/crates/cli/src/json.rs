//! Circuit and report JSON.
//!
//! Circuits are written as
//!
//! ```json
//! {"qubits":[{"reg":"beta","idx":0}],
//!  "gates":[{"kind":"roty","angle":1.5707963267948966,"target":{"reg":"tau","idx":0},
//!            "controls":[{"qubit":{"reg":"alpha","idx":1},"polarity":"pos"}]}]}
//! ```
//!
//! Angles use the shortest decimal that round-trips the `f64` exactly.

use std::collections::BTreeMap;

use oraclemux::circuit::{
    Circuit, ControlSpec, Gate, GateCounts, GateKind, Polarity, QubitId, Register,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Reg {
    Beta,
    Alpha,
    Tau,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct QubitJson {
    reg: Reg,
    idx: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
enum PolarityJson {
    #[serde(rename = "pos")]
    Pos,
    #[serde(rename = "neg")]
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
struct ControlJson {
    qubit: QubitJson,
    polarity: PolarityJson,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindJson {
    Rotx,
    Roty,
    Rotz,
    X,
    Cnot,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct GateJson {
    kind: KindJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
    target: QubitJson,
    #[serde(default)]
    controls: Vec<ControlJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct CircuitJson {
    qubits: Vec<QubitJson>,
    gates: Vec<GateJson>,
}

impl From<QubitId> for QubitJson {
    fn from(q: QubitId) -> Self {
        let reg = match q.register {
            Register::Beta => Reg::Beta,
            Register::Alpha => Reg::Alpha,
            Register::Tau => Reg::Tau,
        };
        QubitJson { reg, idx: q.index }
    }
}

impl TryFrom<QubitJson> for QubitId {
    type Error = CliError;

    fn try_from(q: QubitJson) -> Result<Self, CliError> {
        let register = match q.reg {
            Reg::Beta => Register::Beta,
            Reg::Alpha => Register::Alpha,
            Reg::Tau => Register::Tau,
        };
        Ok(QubitId::new(register, q.idx)?)
    }
}

fn gate_to_json(g: &Gate) -> GateJson {
    let (kind, angle) = match g.kind() {
        GateKind::RotX(a) => (KindJson::Rotx, Some(a)),
        GateKind::RotY(a) => (KindJson::Roty, Some(a)),
        GateKind::RotZ(a) => (KindJson::Rotz, Some(a)),
        GateKind::X => (KindJson::X, None),
        GateKind::Cnot => (KindJson::Cnot, None),
    };
    let controls = g
        .controls()
        .iter()
        .map(|c| ControlJson {
            qubit: c.qubit.into(),
            polarity: match c.polarity {
                Polarity::Positive => PolarityJson::Pos,
                Polarity::Negative => PolarityJson::Neg,
            },
        })
        .collect();
    GateJson {
        kind,
        angle,
        target: g.target().into(),
        controls,
    }
}

fn gate_from_json(g: GateJson) -> Result<Gate, CliError> {
    let angle = || match g.angle {
        Some(a) if a.is_finite() => Ok(a),
        _ => Err(CliError::Format(format!(
            "{:?} gate needs a finite angle",
            g.kind
        ))),
    };
    let kind = match g.kind {
        KindJson::Rotx => GateKind::RotX(angle()?),
        KindJson::Roty => GateKind::RotY(angle()?),
        KindJson::Rotz => GateKind::RotZ(angle()?),
        KindJson::X => GateKind::X,
        KindJson::Cnot => GateKind::Cnot,
    };
    let controls = g
        .controls
        .iter()
        .map(|c| {
            let polarity = match c.polarity {
                PolarityJson::Pos => Polarity::Positive,
                PolarityJson::Neg => Polarity::Negative,
            };
            Ok(ControlSpec {
                qubit: c.qubit.try_into()?,
                polarity,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Gate::new(kind, g.target.try_into()?, controls)?)
}

/// Pretty-printed circuit JSON with a trailing newline.
pub fn circuit_to_json(c: &Circuit) -> String {
    let doc = CircuitJson {
        qubits: c.qubits().map(Into::into).collect(),
        gates: c.gates().iter().map(gate_to_json).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("circuit JSON serializes");
    s.push('\n');
    s
}

pub fn circuit_from_json(text: &str) -> Result<Circuit, CliError> {
    let doc: CircuitJson = serde_json::from_str(text)?;
    let mut c = Circuit::new();
    for q in doc.qubits {
        c.add_qubit(q.try_into()?);
    }
    let declared: Vec<QubitId> = c.qubits().collect();
    for g in doc.gates {
        let gate = gate_from_json(g)?;
        if let Some(q) = gate.qubits().find(|q| !declared.contains(q)) {
            return Err(CliError::Format(format!("gate uses undeclared qubit {q}")));
        }
        c.push(gate);
    }
    Ok(c)
}

/// Gate counts keyed by class name, e.g. `"MCX(2)"`.
pub fn counts_to_map(counts: &GateCounts) -> BTreeMap<String, usize> {
    counts.iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Exact-baseline section of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub cnot_count: usize,
    pub counts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realized_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leak: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

/// Cost comparison between the two compilers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub oracular_counts: BTreeMap<String, usize>,
    pub exact_counts: BTreeMap<String, usize>,
    pub oracular_cnot_count: usize,
    pub exact_cnot_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracular_cost: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_cost: Option<f64>,
}

/// `report.json`. Oracular fields are absent when only the exact compiler
/// ran; error fields are absent without verification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub n_beta: usize,
    pub n_alpha: usize,
    pub mode: String,
    pub target: String,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realized_error: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leak: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comparison: Option<Comparison>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report JSON serializes");
        s.push('\n');
        s
    }
}

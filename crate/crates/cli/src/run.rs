//! Job execution.

use std::path::PathBuf;

use oraclemux::circuit::{Circuit, QubitId, Register};
use oraclemux::verify::{reference_for, BOUND_SLACK, EXACT_TOLERANCE, LEAK_TOLERANCE};
use oraclemux::{
    synth_diagonal_exact, synth_diagonal_oracular, synth_multiplexor_exact,
    synth_multiplexor_oracular, MultiplexorSpec, Simulator, SynthTarget,
};

use crate::config::{write_file, JobConfig, Method, VerifyFileConfig};
use crate::error::CliError;
use crate::json::{
    circuit_from_json, circuit_to_json, counts_to_map, Comparison, ExactReport, Report,
};

pub const ORACULAR_FILE: &str = "circuit_oracular.json";
pub const EXACT_FILE: &str = "circuit_exact.json";
pub const REPORT_FILE: &str = "report.json";

/// What a job produced.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub report: Option<Report>,
    pub written: Vec<PathBuf>,
}

impl Outcome {
    /// False only when a verification ran and failed.
    pub fn passed(&self) -> bool {
        self.report.as_ref().and_then(|r| r.pass).unwrap_or(true)
    }
}

fn check_cap(count: usize, cap: usize) -> Result<(), CliError> {
    if count > cap {
        return Err(CliError::QubitCap { count, cap });
    }
    Ok(())
}

/// Synthesizes, optionally verifies, and writes the requested artifacts
/// under `config.out`.
pub fn run(config: &JobConfig) -> Result<Outcome, CliError> {
    let n_alpha = config.precision()?;
    let angles = config.angles.resolve(config.n_beta)?;
    let n_beta = angles.n_beta();
    let sim = Simulator::with_qubit_cap(config.qubit_cap);
    if config.verify {
        if let Some(n_alpha) = n_alpha.filter(|_| config.method.oracular()) {
            check_cap(n_beta + n_alpha + 1, config.qubit_cap)?;
        }
        check_cap(n_beta + 1, config.qubit_cap)?;
    }

    let oracular = match n_alpha.filter(|_| config.method.oracular()) {
        Some(n_alpha) => Some(match config.target {
            SynthTarget::Multiplexor => synth_multiplexor_oracular(
                &MultiplexorSpec::ry(angles.clone()),
                n_alpha,
                config.mode,
            )?,
            SynthTarget::Diagonal => synth_diagonal_oracular(&angles, n_alpha, config.mode)?,
        }),
        None => None,
    };
    let exact = if config.method.exact() {
        Some(match config.target {
            SynthTarget::Multiplexor => {
                synth_multiplexor_exact(&MultiplexorSpec::ry(angles.clone()))?
            }
            SynthTarget::Diagonal => synth_diagonal_exact(&angles)?,
        })
    } else {
        None
    };

    let mut written = Vec::new();
    if let Some(oc) = &oracular {
        let path = config.out_path(ORACULAR_FILE);
        write_file(&path, &circuit_to_json(&oc.circuit))?;
        written.push(path);
    }
    if let Some(c) = &exact {
        let path = config.out_path(EXACT_FILE);
        write_file(&path, &circuit_to_json(c))?;
        written.push(path);
    }

    if !(config.verify || config.compare) {
        return Ok(Outcome {
            report: None,
            written,
        });
    }

    let mut report = Report {
        n_beta,
        n_alpha: n_alpha.unwrap_or(0),
        mode: config.mode.name().into(),
        target: config.target.name().into(),
        method: config.method.name().into(),
        bound: None,
        realized_error: None,
        leak: None,
        counts: None,
        exact: None,
        comparison: None,
        pass: None,
    };
    let mut pass = true;

    if let Some(oc) = &oracular {
        report.bound = Some(oc.bound);
        report.counts = Some(counts_to_map(&oc.circuit.count_gates()));
        if config.verify {
            let r = sim.check_oracular(oc, &angles)?;
            report.realized_error = Some(r.realized_error);
            report.leak = Some(r.leak);
            pass &= r.pass;
        }
    }
    if let Some(c) = &exact {
        let mut section = ExactReport {
            cnot_count: c.cnot_count(),
            counts: counts_to_map(&c.count_gates()),
            realized_error: None,
            leak: None,
            pass: None,
        };
        if config.verify {
            let ancillas = match config.target {
                SynthTarget::Multiplexor => vec![],
                SynthTarget::Diagonal => vec![QubitId::tau()],
            };
            let v = sim.verify_circuit(c, &ancillas, &reference_for(config.target, &angles))?;
            let ok = v.realized_error <= EXACT_TOLERANCE && v.leak <= LEAK_TOLERANCE;
            section.realized_error = Some(v.realized_error);
            section.leak = Some(v.leak);
            section.pass = Some(ok);
            pass &= ok;
        }
        report.exact = Some(section);
    }
    if let (Some(oc), Some(c), true) = (
        &oracular,
        &exact,
        config.compare || config.method == Method::Both,
    ) {
        let cost = |circ: &Circuit| {
            config
                .cost_weights
                .as_ref()
                .map(|w| circ.weighted_cost(w))
                .transpose()
        };
        report.comparison = Some(Comparison {
            oracular_counts: counts_to_map(&oc.circuit.count_gates()),
            exact_counts: counts_to_map(&c.count_gates()),
            oracular_cnot_count: oc.circuit.cnot_count(),
            exact_cnot_count: c.cnot_count(),
            oracular_cost: cost(&oc.circuit)?,
            exact_cost: cost(c)?,
        });
    }
    if config.verify {
        report.pass = Some(pass);
    }

    let path = config.out_path(REPORT_FILE);
    write_file(&path, &report.to_json())?;
    written.push(path);
    Ok(Outcome {
        report: Some(report),
        written,
    })
}

/// Re-ingests a circuit JSON file and measures its error against the
/// reference built from the given angles. Alpha qubits (and tau for a
/// diagonal target) are treated as ancillas.
pub fn verify_file(config: &VerifyFileConfig) -> Result<Outcome, CliError> {
    let text =
        std::fs::read_to_string(&config.circuit).map_err(|e| CliError::io(&config.circuit, e))?;
    let circuit = circuit_from_json(&text)?;
    let angles = config.angles.resolve(config.n_beta)?;
    let n_beta = angles.n_beta();

    let betas = circuit
        .qubits()
        .filter(|q| q.register == Register::Beta)
        .count();
    if betas != n_beta
        || circuit
            .qubits()
            .any(|q| q.register == Register::Beta && q.index >= n_beta)
    {
        return Err(CliError::Format(format!(
            "circuit control register does not match n-beta = {n_beta}"
        )));
    }
    if !circuit.contains_qubit(&QubitId::tau()) {
        return Err(CliError::Format("circuit has no tau qubit".into()));
    }
    let ancillas: Vec<QubitId> = circuit
        .qubits()
        .filter(|q| match q.register {
            Register::Beta => false,
            Register::Alpha => true,
            Register::Tau => config.target == SynthTarget::Diagonal,
        })
        .collect();
    let n_alpha = circuit
        .qubits()
        .filter(|q| q.register == Register::Alpha)
        .count();
    check_cap(circuit.num_qubits(), config.qubit_cap)?;

    let sim = Simulator::with_qubit_cap(config.qubit_cap);
    let v = sim.verify_circuit(&circuit, &ancillas, &reference_for(config.target, &angles))?;
    let bound = if n_alpha > 0 {
        config.mode.bound(n_alpha)
    } else {
        EXACT_TOLERANCE
    };
    let pass = v.realized_error <= bound + BOUND_SLACK && v.leak <= LEAK_TOLERANCE;
    let report = Report {
        n_beta,
        n_alpha,
        mode: config.mode.name().into(),
        target: config.target.name().into(),
        method: "file".into(),
        bound: Some(bound),
        realized_error: Some(v.realized_error),
        leak: Some(v.leak),
        counts: Some(counts_to_map(&circuit.count_gates())),
        exact: None,
        comparison: None,
        pass: Some(pass),
    };
    let mut written = Vec::new();
    if let Some(dir) = &config.out {
        let path = dir.join(REPORT_FILE);
        write_file(&path, &report.to_json())?;
        written.push(path);
    }
    Ok(Outcome {
        report: Some(report),
        written,
    })
}

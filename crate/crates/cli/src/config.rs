//! Job configuration and angle sources.

use std::f64::consts::TAU;
use std::path::{Path, PathBuf};

use oraclemux::quantizer::MAX_N_ALPHA;
use oraclemux::sim::DEFAULT_QUBIT_CAP;
use oraclemux::{AngleVector, CostWeights, GateClass, QuantizeMode, SynthTarget};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;
use crate::formats::parse_angle_file;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Oracular,
    Exact,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Oracular => "oracular",
            Method::Exact => "exact",
            Method::Both => "both",
        }
    }

    pub fn oracular(self) -> bool {
        matches!(self, Method::Oracular | Method::Both)
    }

    pub fn exact(self) -> bool {
        matches!(self, Method::Exact | Method::Both)
    }
}

/// Where the `2^n_beta` angles come from.
///
/// Generated angles use ChaCha8 seeded with `seed_from_u64(seed)` and are
/// drawn in control-value order: `Random` takes `2π · u` with `u` the
/// standard uniform `f64` in `[0, 1)`; `Dyadic` takes `2π · m / 2^exponent`
/// with `m` uniform in `0..2^exponent`.
#[derive(Clone, Debug, PartialEq)]
pub enum AngleSource {
    Inline(Vec<f64>),
    File(PathBuf),
    Random { seed: u64 },
    Constant(f64),
    Dyadic { exponent: u32, seed: u64 },
}

/// Largest `exponent` accepted by the dyadic generator.
const MAX_DYADIC_EXPONENT: u32 = 52;

impl AngleSource {
    pub fn resolve(&self, n_beta: usize) -> Result<AngleVector, CliError> {
        let len = 1usize
            .checked_shl(n_beta as u32)
            .filter(|_| (1..=oraclemux::quantizer::MAX_N_BETA).contains(&n_beta))
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "n-beta must be in 1..={}",
                    oraclemux::quantizer::MAX_N_BETA
                ))
            })?;
        let angles = match self {
            AngleSource::Inline(v) => v.clone(),
            AngleSource::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                parse_angle_file(&text)?
            }
            AngleSource::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                (0..len).map(|_| TAU * rng.gen::<f64>()).collect()
            }
            AngleSource::Constant(value) => vec![*value; len],
            AngleSource::Dyadic { exponent, seed } => {
                if *exponent > MAX_DYADIC_EXPONENT {
                    return Err(CliError::Usage(format!(
                        "dyadic exponent must be at most {MAX_DYADIC_EXPONENT}"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let denom = 1u64 << exponent;
                (0..len)
                    .map(|_| TAU * rng.gen_range(0..denom) as f64 / denom as f64)
                    .collect()
            }
        };
        Ok(AngleVector::new(n_beta, angles)?)
    }
}

/// Parses `CLASS=WEIGHT` pairs separated by commas, e.g.
/// `CNOT=1,MCX(2)=6,*=0`. `*` sets the weight of unlisted classes.
pub fn parse_weights(text: &str) -> Result<CostWeights, CliError> {
    let mut weights = CostWeights::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (class, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("weight {item:?} is not CLASS=VALUE")))?;
        let value: f64 = value
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("weight {item:?} has no numeric value")))?;
        weights = if class.trim() == "*" {
            weights.with_fallback(value)?
        } else {
            let class: GateClass = class
                .parse()
                .map_err(|_| CliError::Usage(format!("unknown gate class {:?}", class.trim())))?;
            weights.with(class, value)?
        };
    }
    Ok(weights)
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobConfig {
    pub n_beta: usize,
    pub n_alpha: Option<usize>,
    pub mode: QuantizeMode,
    pub target: SynthTarget,
    pub method: Method,
    pub angles: AngleSource,
    pub verify: bool,
    /// Adds the cost comparison table to the report.
    pub compare: bool,
    pub cost_weights: Option<CostWeights>,
    pub qubit_cap: usize,
    pub out: PathBuf,
}

impl JobConfig {
    pub fn new(n_beta: usize, angles: AngleSource) -> Self {
        JobConfig {
            n_beta,
            n_alpha: None,
            mode: QuantizeMode::Truncate,
            target: SynthTarget::Multiplexor,
            method: Method::Oracular,
            angles,
            verify: false,
            compare: false,
            cost_weights: None,
            qubit_cap: DEFAULT_QUBIT_CAP,
            out: PathBuf::from("out"),
        }
    }

    /// `n_alpha`, required whenever the oracular compiler runs.
    pub fn precision(&self) -> Result<Option<usize>, CliError> {
        match self.n_alpha {
            Some(n) if !(1..=MAX_N_ALPHA).contains(&n) => Err(CliError::Usage(format!(
                "n-alpha must be in 1..={MAX_N_ALPHA}"
            ))),
            None if self.method.oracular() => Err(CliError::Usage(
                "n-alpha is required for oracular synthesis".into(),
            )),
            n => Ok(n),
        }
    }

    pub fn out_path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }
}

/// Settings of the `verify-file` subcommand.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyFileConfig {
    pub circuit: PathBuf,
    pub n_beta: usize,
    pub mode: QuantizeMode,
    pub target: SynthTarget,
    pub angles: AngleSource,
    pub qubit_cap: usize,
    pub out: Option<PathBuf>,
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_seeded() {
        let a = AngleSource::Random { seed: 1 }.resolve(3).unwrap();
        assert_eq!(a, AngleSource::Random { seed: 1 }.resolve(3).unwrap());
        assert_ne!(a, AngleSource::Random { seed: 2 }.resolve(3).unwrap());
        assert!(a.as_slice().iter().all(|t| (0.0..TAU).contains(t)));

        let d = AngleSource::Dyadic {
            exponent: 3,
            seed: 9,
        }
        .resolve(2)
        .unwrap();
        for t in d.as_slice() {
            let m = t / TAU * 8.0;
            assert!((m - m.round()).abs() < 1e-12);
        }
        assert_eq!(
            AngleSource::Constant(0.5).resolve(1).unwrap().as_slice(),
            &[0.5, 0.5]
        );
    }

    #[test]
    fn count_mismatch_is_reported() {
        let err = AngleSource::Inline(vec![0.0; 3]).resolve(2).unwrap_err();
        assert!(matches!(
            err,
            CliError::AngleCount {
                expected: 4,
                found: 3
            }
        ));
        assert!(matches!(
            AngleSource::Constant(0.0).resolve(0),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn weights() {
        let w = parse_weights("CNOT=1, MCX(2)=6, *=0").unwrap();
        assert_eq!(w.weight(GateClass::Mcx(2)), Some(6.0));
        assert_eq!(w.weight(GateClass::ControlledRotation(1)), Some(0.0));
        assert!(parse_weights("CNOT").is_err());
        assert!(parse_weights("TOFFOLI=1").is_err());
        assert!(parse_weights("CNOT=-1").is_err());
        assert_eq!(parse_weights("").unwrap().weight(GateClass::Cnot), None);
    }

    #[test]
    fn precision_required_for_oracular() {
        let mut c = JobConfig::new(2, AngleSource::Constant(0.0));
        assert!(c.precision().is_err());
        c.method = Method::Exact;
        assert_eq!(c.precision().unwrap(), None);
        c.n_alpha = Some(0);
        assert!(c.precision().is_err());
    }
}

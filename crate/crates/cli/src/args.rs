//! Command-line arguments.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use oraclemux::sim::DEFAULT_QUBIT_CAP;
use oraclemux::{QuantizeMode, SynthTarget};

use crate::config::{parse_weights, AngleSource, JobConfig, Method, VerifyFileConfig};
use crate::error::CliError;
use crate::formats::parse_angle_list;
use crate::run::{run, verify_file, Outcome};

/// Exit status for success or a passing verification.
pub const EXIT_OK: i32 = 0;
/// Exit status when a verification fails.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit status for malformed input or configuration.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "oraclemux",
    version,
    about = "Oracular and exact synthesis of quantum multiplexors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize circuits and write them as JSON.
    Synth(JobArgs),
    /// Synthesize and check the realized error against the bound.
    Verify(JobArgs),
    /// Synthesize with both compilers and report gate counts side by side.
    Compare(JobArgs),
    /// Check a previously written circuit JSON file.
    VerifyFile(VerifyFileArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Truncate,
    Nearest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Multiplexor,
    Diagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracular,
    Exact,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    Random,
    Constant,
    Dyadic,
}

#[derive(Debug, Args)]
pub struct AngleArgs {
    /// Number of control qubits.
    #[arg(long)]
    pub n_beta: usize,
    /// Comma-separated angles in radians, control value 0 first.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["angles_file", "generator"])]
    pub angles: Option<String>,
    /// File with one angle in radians per line.
    #[arg(long, conflicts_with = "generator")]
    pub angles_file: Option<PathBuf>,
    /// Angle generator; `--seed` alone selects `random`.
    #[arg(long, value_enum)]
    pub generator: Option<GeneratorArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Value for the constant generator.
    #[arg(long, allow_hyphen_values = true)]
    pub value: Option<f64>,
    /// Denominator exponent for the dyadic generator.
    #[arg(long)]
    pub exponent: Option<u32>,
}

#[derive(Debug, Args)]
pub struct JobArgs {
    #[command(flatten)]
    pub angles: AngleArgs,
    /// Fractional bits stored per angle.
    #[arg(long)]
    pub n_alpha: Option<usize>,
    #[arg(long, value_enum, default_value = "truncate")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "multiplexor")]
    pub target: TargetArg,
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Check the synthesized circuits by dense simulation.
    #[arg(long)]
    pub verify: bool,
    /// Cost weights, e.g. `CNOT=1,MCX(2)=6,*=0`.
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long, default_value_t = DEFAULT_QUBIT_CAP)]
    pub qubit_cap: usize,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyFileArgs {
    /// Circuit JSON file.
    #[arg(long)]
    pub circuit: PathBuf,
    #[command(flatten)]
    pub angles: AngleArgs,
    #[arg(long, value_enum, default_value = "truncate")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "multiplexor")]
    pub target: TargetArg,
    #[arg(long, default_value_t = DEFAULT_QUBIT_CAP)]
    pub qubit_cap: usize,
    /// Directory for `report.json`; the report is printed either way.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl From<ModeArg> for QuantizeMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Truncate => QuantizeMode::Truncate,
            ModeArg::Nearest => QuantizeMode::Nearest,
        }
    }
}

impl From<TargetArg> for SynthTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Multiplexor => SynthTarget::Multiplexor,
            TargetArg::Diagonal => SynthTarget::Diagonal,
        }
    }
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Oracular => Method::Oracular,
            MethodArg::Exact => Method::Exact,
            MethodArg::Both => Method::Both,
        }
    }
}

impl AngleArgs {
    pub fn source(&self) -> Result<AngleSource, CliError> {
        let generator = self.generator.or(self.seed.map(|_| GeneratorArg::Random));
        let need_seed = || {
            self.seed
                .ok_or_else(|| CliError::Usage("this generator needs --seed".into()))
        };
        match (&self.angles, &self.angles_file, generator) {
            (Some(list), None, None) => Ok(AngleSource::Inline(parse_angle_list(list)?)),
            (None, Some(path), None) => Ok(AngleSource::File(path.clone())),
            (None, None, Some(GeneratorArg::Random)) => {
                Ok(AngleSource::Random { seed: need_seed()? })
            }
            (None, None, Some(GeneratorArg::Constant)) => {
                Ok(AngleSource::Constant(self.value.ok_or_else(|| {
                    CliError::Usage("the constant generator needs --value".into())
                })?))
            }
            (None, None, Some(GeneratorArg::Dyadic)) => Ok(AngleSource::Dyadic {
                exponent: self.exponent.ok_or_else(|| {
                    CliError::Usage("the dyadic generator needs --exponent".into())
                })?,
                seed: need_seed()?,
            }),
            (None, None, None) => Err(CliError::Usage(
                "give --angles, --angles-file, --generator or --seed".into(),
            )),
            _ => Err(CliError::Usage("give exactly one angle source".into())),
        }
    }
}

impl JobArgs {
    fn into_config(
        self,
        verify: bool,
        compare: bool,
        default_method: Method,
    ) -> Result<JobConfig, CliError> {
        let mut config = JobConfig::new(self.angles.n_beta, self.angles.source()?);
        config.n_alpha = self.n_alpha;
        config.mode = self.mode.into();
        config.target = self.target.into();
        config.method = self.method.map(Method::from).unwrap_or(default_method);
        config.verify = self.verify || verify;
        config.compare = compare;
        config.cost_weights = self.weights.as_deref().map(parse_weights).transpose()?;
        config.qubit_cap = self.qubit_cap;
        config.out = self.out;
        Ok(config)
    }
}

impl VerifyFileArgs {
    fn into_config(self) -> Result<VerifyFileConfig, CliError> {
        Ok(VerifyFileConfig {
            circuit: self.circuit,
            n_beta: self.angles.n_beta,
            mode: self.mode.into(),
            target: self.target.into(),
            angles: self.angles.source()?,
            qubit_cap: self.qubit_cap,
            out: self.out,
        })
    }
}

fn dispatch(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Synth(a) => run(&a.into_config(false, false, Method::Oracular)?),
        Command::Verify(a) => run(&a.into_config(true, false, Method::Oracular)?),
        Command::Compare(a) => {
            let config = a.into_config(false, true, Method::Both)?;
            if config.method != Method::Both {
                return Err(CliError::Usage("compare always runs both methods".into()));
            }
            run(&config)
        }
        Command::VerifyFile(a) => verify_file(&a.into_config()?),
    }
}

fn summarize(outcome: &Outcome, out: &mut dyn Write) -> std::io::Result<()> {
    for path in &outcome.written {
        writeln!(out, "wrote {}", path.display())?;
    }
    let Some(r) = &outcome.report else {
        return Ok(());
    };
    if let (Some(err), Some(bound)) = (r.realized_error, r.bound) {
        writeln!(out, "realized error {err:.6e}, bound {bound:.6e}")?;
    }
    if let Some(e) = &r.exact {
        writeln!(out, "exact CNOT count {}", e.cnot_count)?;
    }
    if let Some(cmp) = &r.comparison {
        writeln!(out, "{:<12} {:>10} {:>10}", "class", "oracular", "exact")?;
        let mut classes: Vec<&String> = cmp
            .oracular_counts
            .keys()
            .chain(cmp.exact_counts.keys())
            .collect();
        classes.sort();
        classes.dedup();
        for class in classes {
            let o = cmp.oracular_counts.get(class).copied().unwrap_or(0);
            let x = cmp.exact_counts.get(class).copied().unwrap_or(0);
            writeln!(out, "{class:<12} {o:>10} {x:>10}")?;
        }
        if let (Some(o), Some(x)) = (cmp.oracular_cost, cmp.exact_cost) {
            writeln!(out, "{:<12} {o:>10} {x:>10}", "cost")?;
        }
    }
    if let Some(pass) = r.pass {
        writeln!(out, "{}", if pass { "PASS" } else { "FAIL" })?;
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit status.
pub fn execute<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(outcome) => {
            let _ = summarize(&outcome, out);
            if outcome.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use circuitq::units::UnitMode;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::CliError;

#[derive(Debug, Clone, Parser)]
#[command(
    name = "circuitq",
    version,
    about = "Quantized mesoscopic circuits: conductance levels, bands and Landauer staircases"
)]
pub struct Cli {
    /// Unit system for inputs and outputs.
    #[arg(long, global = true, default_value = "dimensionless")]
    pub units: UnitMode,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// key=value file with default flag values; command-line flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Conductance levels of the biased-conductance circuit.
    SchrodingerLevels(SchrodingerLevelsArgs),
    /// Diagonalized spectrum of the circuit Hamiltonian.
    SchrodingerBand(SchrodingerBandArgs),
    /// Two-branch dispersion of the graphene-analog circuit.
    DiracDispersion(DiracDispersionArgs),
    /// Quantization-condition roots of the graphene-analog circuit.
    DiracRoots(DiracRootsArgs),
    /// Landauer conductance staircase of a hard-wall constriction.
    LandauerStaircase(LandauerArgs),
    /// Calibrated constants and conductance scales.
    Calibrate(CalibrateArgs),
    /// Run every numerical cross-check and report PASS/FAIL.
    Validate(ValidateArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SchrodingerLevels(_) => "schrodinger-levels",
            Command::SchrodingerBand(_) => "schrodinger-band",
            Command::DiracDispersion(_) => "dirac-dispersion",
            Command::DiracRoots(_) => "dirac-roots",
            Command::LandauerStaircase(_) => "landauer-staircase",
            Command::Calibrate(_) => "calibrate",
            Command::Validate(_) => "validate",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BetaArgs {
    /// Commutator constant β.
    #[arg(long, conflicts_with = "calibrated")]
    pub beta: Option<f64>,

    /// Use the β that makes the conductance step e²/h (default when --beta is absent).
    #[arg(long)]
    pub calibrated: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SchrodingerLevelsArgs {
    /// Bias voltage.
    #[arg(long = "V", visible_alias = "voltage", default_value_t = 1.0)]
    pub voltage: f64,

    #[command(flatten)]
    pub beta: BetaArgs,

    #[arg(long, default_value_t = 3)]
    pub m_max: u32,

    /// Excess energy; levels solve E = eV(1 − cos(eG/β)).
    #[arg(long, allow_negative_numbers = true)]
    pub energy: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SchrodingerBandArgs {
    #[arg(long = "V", visible_alias = "voltage", default_value_t = 1.0)]
    pub voltage: f64,

    #[command(flatten)]
    pub beta: BetaArgs,

    #[arg(long, default_value_t = 64)]
    pub n_sites: usize,

    #[arg(long, default_value = "periodic")]
    pub boundary: circuitq::Boundary,
}

#[derive(Debug, Clone, Args)]
pub struct DiracArgs {
    #[arg(long = "V", visible_alias = "voltage", default_value_t = 1.0)]
    pub voltage: f64,

    /// Commutator constant β'.
    #[arg(long, conflicts_with_all = ["vf_over_c", "beta", "calibrated"])]
    pub beta_prime: Option<f64>,

    /// Velocity ratio v_F/c; β' = (v_F/c)·β.
    #[arg(long)]
    pub vf_over_c: Option<f64>,

    #[command(flatten)]
    pub beta: BetaArgs,

    /// Current-source intensity.
    #[arg(long = "I0", visible_alias = "i0", conflicts_with = "calibrate_g0")]
    pub i0: Option<f64>,

    /// Choose I0 so that the m = 0 root equals this conductance.
    #[arg(long = "calibrate-G0", visible_alias = "calibrate-g0")]
    pub calibrate_g0: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DiracDispersionArgs {
    #[command(flatten)]
    pub circuit: DiracArgs,

    /// Grid points over eG/β' ∈ [0, 2π].
    #[arg(long, default_value_t = 65)]
    pub g_points: usize,

    #[arg(long, default_value_t = 3)]
    pub m_max: u32,

    /// Skip the quantization-condition roots.
    #[arg(long)]
    pub no_roots: bool,
}

#[derive(Debug, Clone, Args)]
pub struct DiracRootsArgs {
    #[command(flatten)]
    pub circuit: DiracArgs,

    #[arg(long, default_value_t = 3)]
    pub m_max: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepKind {
    Fermi,
    Width,
}

#[derive(Debug, Clone, Args)]
pub struct LandauerArgs {
    #[arg(long, default_value_t = 1.0)]
    pub m_eff: f64,

    /// Channel width (fixed during a Fermi-energy sweep).
    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub width: f64,

    /// Fermi kinetic energy (fixed during a width sweep).
    #[arg(long, default_value_t = 12.5)]
    pub fermi: f64,

    /// Band-edge offset, reported only.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub e0: f64,

    #[arg(long, value_enum, default_value_t = SweepKind::Fermi)]
    pub sweep: SweepKind,

    #[arg(long, allow_negative_numbers = true)]
    pub from: f64,

    #[arg(long, allow_negative_numbers = true)]
    pub to: f64,

    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct CalibrateArgs {
    #[arg(long)]
    pub vf_over_c: Option<f64>,

    /// With --V, also report the I0 that pins the m = 0 root at this conductance.
    #[arg(long = "calibrate-G0", visible_alias = "calibrate-g0")]
    pub calibrate_g0: Option<f64>,

    #[arg(long = "V", visible_alias = "voltage", default_value_t = 1.0)]
    pub voltage: f64,

    #[arg(long, default_value_t = 4)]
    pub degeneracy: u32,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 64)]
    pub n_sites: usize,

    /// Seed for the randomized parameter draws.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Negative control: perturb the calibrated β so the step checks fail.
    #[arg(long, hide = true)]
    pub inject_corrupt_beta: bool,
}

/// Parses `argv`, splicing in `--config` values right after the subcommand.
/// Keys already given on the command line are skipped, so explicit flags
/// take precedence.
pub fn parse_with_config<I, T>(argv: I) -> Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let first = Cli::try_parse_from(&argv)?;
    let Some(path) = first.config.clone() else {
        return Ok(first);
    };
    let extra = read_config(&path)
        .map_err(|e| clap::Error::raw(clap::error::ErrorKind::Io, format!("{e}\n")))?;
    let name = first.command.name();
    let pos = argv
        .iter()
        .position(|a| a.to_str() == Some(name))
        .expect("parsed subcommand appears in argv");
    let mut merged: Vec<OsString> = argv[..=pos].to_vec();
    let explicit = |flag: &str| {
        let key = flag.split('=').next().unwrap_or(flag);
        argv.iter().any(|a| {
            a.to_str().is_some_and(|a| {
                a == key || a.strip_prefix(key).is_some_and(|r| r.starts_with('='))
            })
        })
    };
    merged.extend(
        extra
            .into_iter()
            .filter(|f| !explicit(f))
            .map(OsString::from),
    );
    merged.extend_from_slice(&argv[pos + 1..]);
    Cli::try_parse_from(merged)
}

/// Reads `key=value` lines (`#` comments, blank lines ignored) into flags.
pub fn read_config(path: &PathBuf) -> Result<Vec<String>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let mut flags = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!(
                "{}:{}: expected key=value",
                path.display(),
                lineno + 1
            ))
        })?;
        let (key, value) = (key.trim().trim_start_matches("--"), value.trim());
        if key == "config" {
            return Err(CliError::Config(
                "config files cannot include other config files".into(),
            ));
        }
        match value {
            "true" => flags.push(format!("--{key}")),
            "false" => {}
            _ => flags.push(format!("--{key}={value}")),
        }
    }
    Ok(flags)
}

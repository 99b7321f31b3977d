//! Command-line flags and their validation into a [`RunConfig`].

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rtxy::phasemap::Axis;
use rtxy::{ModelParams, Sector};

#[derive(Parser, Debug)]
#[command(name = "rtxy", version, about = "Spectra, phase maps and couplings of the RT-symmetric XY chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analytic many-body spectrum, checked against exact diagonalization for N ≤ 12.
    Spectrum(SpectrumArgs),
    /// Broken/unbroken classification over a (λ, γ) grid.
    Phase(PhaseArgs),
    /// Exact counterpart couplings κ(d) against the strong-field approximants over a λ sweep.
    Kappa(KappaArgs),
    /// Spectra of H, its Hermitian counterpart and the reduced XY model.
    Compare(CompareArgs),
    /// Run the acceptance checks; exits 1 if any fails.
    Validate(ValidateArgs),
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output file, written atomically; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub j: f64,
    #[arg(long, value_enum, default_value_t = SectorChoice::Both)]
    pub sector: SectorChoice,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct PhaseArgs {
    /// Chain lengths, one panel each.
    #[arg(long, num_args = 1.., default_values_t = [4usize, 8, 30])]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lmin: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub lmax: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub gmin: f64,
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    pub gmax: f64,
    /// Points per axis.
    #[arg(long, default_value_t = 61)]
    pub res: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct KappaArgs {
    #[arg(long, default_value_t = 10)]
    pub n: usize,
    /// Anisotropies, one curve each.
    #[arg(long, num_args = 1.., default_values_t = [0.2, 0.5, 2.0], allow_negative_numbers = true)]
    pub gamma: Vec<f64>,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub j: f64,
    #[arg(long, default_value_t = 2.5, allow_negative_numbers = true)]
    pub lmin: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    pub lmax: f64,
    #[arg(long, default_value_t = 76)]
    pub res: usize,
    #[arg(long, value_enum, default_value_t = SectorChoice::Both)]
    pub sector: SectorChoice,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Chain lengths, one column group each.
    #[arg(long, num_args = 1.., default_values_t = [4usize, 6, 8])]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub j: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    /// Criterion numbers to run (default: all ten).
    #[arg(long, value_delimiter = ',')]
    pub criteria: Vec<u8>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SectorChoice {
    #[value(name = "+", alias = "even")]
    Even,
    #[value(name = "-", alias = "odd")]
    Odd,
    Both,
}

impl SectorChoice {
    pub fn sectors(self) -> Vec<Sector> {
        match self {
            SectorChoice::Even => vec![Sector::Even],
            SectorChoice::Odd => vec![Sector::Odd],
            SectorChoice::Both => Sector::BOTH.to_vec(),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SectorChoice::Even => "+",
            SectorChoice::Odd => "-",
            SectorChoice::Both => "both",
        }
    }
}

/// A flag combination the solvers cannot run. Maps to exit status 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<rtxy::Error> for ConfigError {
    fn from(e: rtxy::Error) -> Self {
        ConfigError(e.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone)]
pub enum Task {
    Spectrum { params: ModelParams, sector: SectorChoice },
    Phase { sizes: Vec<usize>, lambda: Axis, gamma: Axis },
    Kappa { n: usize, j: f64, gammas: Vec<f64>, lambda: Axis, sector: SectorChoice },
    Compare { points: Vec<ModelParams> },
    Validate { criteria: Vec<u8> },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub task: Task,
    pub output: Output,
}

fn require_format(format: Format, allowed: &[Format], command: &str) -> Result<(), ConfigError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(ConfigError(format!("{command} does not write {} output", format!("{format:?}").to_lowercase())))
    }
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, ConfigError> {
        use Format::*;
        match self.command {
            Command::Spectrum(a) => {
                require_format(a.output.format, &[Csv, Json], "spectrum")?;
                let params = ModelParams::new(a.j, a.lambda, a.gamma, a.n)?;
                Ok(RunConfig {
                    task: Task::Spectrum { params, sector: a.sector },
                    output: Output { path: a.output.out, format: a.output.format },
                })
            }
            Command::Phase(a) => {
                for &n in &a.n {
                    ModelParams::unit(0.0, 0.0, n)?;
                }
                Ok(RunConfig {
                    task: Task::Phase {
                        sizes: a.n,
                        lambda: Axis::new(a.lmin, a.lmax, a.res)?,
                        gamma: Axis::new(a.gmin, a.gmax, a.res)?,
                    },
                    output: Output { path: a.output.out, format: a.output.format },
                })
            }
            Command::Kappa(a) => {
                for &g in &a.gamma {
                    ModelParams::new(a.j, a.lmin, g, a.n)?;
                }
                let lambda = Axis::new(a.lmin, a.lmax, a.res)?;
                if lambda.values().contains(&0.0) {
                    return Err(ConfigError("kappa sweep must not include λ = 0".into()));
                }
                Ok(RunConfig {
                    task: Task::Kappa { n: a.n, j: a.j, gammas: a.gamma, lambda, sector: a.sector },
                    output: Output { path: a.output.out, format: a.output.format },
                })
            }
            Command::Compare(a) => {
                let points =
                    a.n.iter().map(|&n| ModelParams::new(a.j, a.lambda, a.gamma, n)).collect::<rtxy::Result<Vec<_>>>()?;
                for p in &points {
                    p.require_spin_basis(rtxy::oracle::MAX_DENSE_SITES)?;
                }
                Ok(RunConfig {
                    task: Task::Compare { points },
                    output: Output { path: a.output.out, format: a.output.format },
                })
            }
            Command::Validate(a) => {
                require_format(a.format, &[Csv, Json], "validate")?;
                if let Some(bad) = a.criteria.iter().find(|&&c| c == 0 || c as usize > rtxy::validation::CRITERIA.len()) {
                    return Err(ConfigError(format!("no criterion {bad}")));
                }
                Ok(RunConfig {
                    task: Task::Validate { criteria: a.criteria },
                    output: Output { path: a.out, format: a.format },
                })
            }
        }
    }
}

/// Worker count from `RTXY_THREADS`, if set.
pub fn thread_cap() -> Result<Option<usize>, ConfigError> {
    match std::env::var("RTXY_THREADS") {
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(ConfigError(format!("RTXY_THREADS: {e}"))),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ConfigError(format!("RTXY_THREADS must be a positive integer, got {s:?}"))),
        },
    }
}

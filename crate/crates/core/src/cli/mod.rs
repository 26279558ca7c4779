//! The `sagin` command-line front end.
//!
//! Every command renders its whole output in memory and writes it at the
//! end, so a non-zero exit never leaves a partial file behind.

mod report;
mod waveform_job;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::atmosphere::{WeatherCondition, WeatherKind};
use crate::scattering::Species;
use crate::scenario::{OutputFormat, Scenario};
use crate::waveform::DEFAULT_SEED;

pub use waveform_job::{AmbiguityGrid, EchoSpec, PaprSettings, WaveformJob, WaveformMetric};

/// Exit status for malformed invocations, scenarios and specs.
pub const EXIT_USAGE: u8 = 2;
/// Exit status for failures after the input was accepted.
pub const EXIT_RUNTIME: u8 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Input(crate::Error),
    #[error(transparent)]
    Runtime(crate::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => EXIT_USAGE,
            CliError::Runtime(_) | CliError::Io { .. } => EXIT_RUNTIME,
        }
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        use crate::Error::*;
        match e {
            Config(_) | Dimension(_) | Domain(_) | OutOfRange(_) => CliError::Input(e),
            Resource(_) | UndefinedShare(_) => CliError::Runtime(e),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "sagin",
    version,
    about = "Attenuation, link budget, capacity and waveform metrics for mmWave, THz and optical space-air-ground links"
)]
pub struct Cli {
    /// Scenario JSON file; the built-in default scenario when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    pub scenario: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Output format; falls back to the scenario's `output.format`, then CSV.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extinction efficiency and cross-section over a frequency x radius grid.
    Xsection(XsectionArgs),
    /// Per-factor attenuation breakdown for every band.
    Budget(SweepArgs),
    /// SNR and Shannon capacity for every band.
    Capacity(SweepArgs),
    /// Medium-induced loss attributed to atmospheric layers.
    Layers(SweepArgs),
    /// PAPR statistics or ambiguity surfaces from a waveform spec.
    Waveform(WaveformArgs),
}

#[derive(Debug, Args)]
pub struct XsectionArgs {
    /// Comma-separated carrier frequencies in Hz.
    #[arg(long = "freq-hz", value_delimiter = ',', value_parser = positive, default_values_t = [20e9, 0.3e12, 193.4e12])]
    pub frequencies_hz: Vec<f64>,
    /// Comma-separated particle radii in m.
    #[arg(long = "radius-m", value_delimiter = ',', value_parser = positive, default_values_t = [2e-3, 20e-6])]
    pub radii_m: Vec<f64>,
    /// Species whose refractive-index model is used.
    #[arg(long, default_value = "rain")]
    pub species: Species,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Evaluate every condition of the scenario's weather sweep.
    #[arg(long, conflicts_with = "weather")]
    pub weather_sweep: bool,
    /// Use the scenario's configured condition of this kind.
    #[arg(long, value_enum)]
    pub weather: Option<WeatherArg>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum WeatherArg {
    Clear,
    Rain,
    Fog,
    Cloud,
}

impl From<WeatherArg> for WeatherKind {
    fn from(w: WeatherArg) -> Self {
        match w {
            WeatherArg::Clear => WeatherKind::Clear,
            WeatherArg::Rain => WeatherKind::Rain,
            WeatherArg::Fog => WeatherKind::Fog,
            WeatherArg::Cloud => WeatherKind::Cloud,
        }
    }
}

#[derive(Debug, Args)]
pub struct WaveformArgs {
    /// Waveform spec JSON file.
    #[arg(long, value_name = "FILE")]
    pub spec: PathBuf,
    #[arg(long, value_enum, default_value = "papr")]
    pub metric: WaveformMetric,
}

fn positive(s: &str) -> Result<f64, String> {
    if s.trim().is_empty() {
        return Err("empty value".into());
    }
    let v: f64 = s.trim().parse().map_err(|e| format!("{e}"))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{v} is not a finite positive number"))
    }
}

/// Parses `args`, runs the command and returns the exit status. Errors are
/// reported on standard error.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sagin: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn main() -> ExitCode {
    main_with(std::env::args_os())
}

/// Output of one command: the main document plus an optional sidecar
/// written next to it.
pub(crate) struct Rendered {
    pub body: String,
    pub sidecar: Option<(String, String)>,
    /// The scenario's `output.path`, used when `--out` is absent.
    pub fallback_out: Option<PathBuf>,
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = cli.jobs {
            if n == 0 {
                return Err(CliError::Usage("--jobs must be at least 1".into()));
            }
            b = b.num_threads(n);
        }
        b.build().map_err(|e| CliError::Usage(format!("cannot start {n:?} workers: {e}", n = cli.jobs)))?
    };
    let rendered = pool.install(|| execute(cli))?;
    write_output(cli.out.as_deref().or(rendered.fallback_out.as_deref()), &rendered)
}

fn load_scenario(cli: &Cli) -> Result<Scenario, CliError> {
    Ok(match &cli.scenario {
        Some(p) => Scenario::load(p)?,
        None => Scenario::shipped(),
    })
}

fn format_for(cli: &Cli, scenario: Option<&Scenario>) -> OutputFormat {
    cli.format
        .or_else(|| scenario.and_then(|s| s.output.as_ref()).map(|o| o.format))
        .unwrap_or_default()
}

fn weathers(scenario: &Scenario, args: &SweepArgs) -> Result<Vec<WeatherCondition>, CliError> {
    if args.weather_sweep {
        return Ok(scenario.weathers());
    }
    match args.weather {
        None => Ok(vec![scenario.weather]),
        Some(w) => scenario.weather_of(w.into()).map(|c| vec![c]).ok_or_else(|| {
            CliError::Usage(format!(
                "the scenario configures no {} condition (add one to `weather` or `weather_sweep`)",
                WeatherKind::from(w).name()
            ))
        }),
    }
}

fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    let plain = |body, scenario: &Scenario| Rendered {
        body,
        sidecar: None,
        fallback_out: scenario.output.as_ref().and_then(|o| o.path.clone()),
    };
    match &cli.command {
        Command::Xsection(a) => {
            let scenario = load_scenario(cli)?;
            let fmt = format_for(cli, Some(&scenario));
            Ok(plain(report::xsection(&scenario, a, fmt)?, &scenario))
        }
        Command::Budget(a) => {
            let scenario = load_scenario(cli)?;
            let fmt = format_for(cli, Some(&scenario));
            Ok(plain(report::budget(&scenario, &weathers(&scenario, a)?, fmt)?, &scenario))
        }
        Command::Capacity(a) => {
            let scenario = load_scenario(cli)?;
            let fmt = format_for(cli, Some(&scenario));
            Ok(plain(report::capacity(&scenario, &weathers(&scenario, a)?, a.weather_sweep, fmt)?, &scenario))
        }
        Command::Layers(a) => {
            let scenario = load_scenario(cli)?;
            let fmt = format_for(cli, Some(&scenario));
            Ok(plain(report::layers(&scenario, &weathers(&scenario, a)?, fmt)?, &scenario))
        }
        Command::Waveform(a) => {
            let job = WaveformJob::load(&a.spec)?;
            let fmt = format_for(cli, None);
            waveform_job::render(&job, a.metric, cli.seed, fmt, cli.out.as_deref())
        }
    }
}

fn write_output(out: Option<&Path>, r: &Rendered) -> Result<(), CliError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| CliError::Io { path, source }
    };
    match out {
        Some(path) => {
            std::fs::write(path, &r.body).map_err(io(path))?;
            if let Some((name, text)) = &r.sidecar {
                let side = PathBuf::from(name);
                std::fs::write(&side, text).map_err(io(&side))?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(r.body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(io(Path::new("<stdout>")))?;
            if let Some((_, text)) = &r.sidecar {
                eprint!("{text}");
            }
        }
    }
    Ok(())
}

//! The `aeromacs` command-line front end.
//!
//! Exit codes: 0 on success, 1 for invalid input, 2 for internal failures.
//! Output is a pure function of the flags (and config file), so repeated runs
//! are byte-identical.

pub mod config;
mod commands;
pub mod report;

use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

pub use commands::{
    coverage_report, doppler_sweep, max_speed_report, params_report, plan_report,
    simulate_cp_report, simulate_ici_report, SpacingSource, SweepRange,
};
use config::{parse_length, parse_speed, resolve_profile, ConfigFile, RunConfig};
use report::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "aeromacs", version, about = "AeroMACS OFDMA physical-layer analysis")]
pub struct Cli {
    /// JSON configuration file; command-line flags override its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerology, rates and prefix overhead of a profile.
    Params {
        #[command(flatten)]
        profile: ProfileArgs,
        /// Downlink share of the frame in symbols; the uplink gets the rest.
        #[arg(long, default_value_t = 12)]
        dl_symbols: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Line-of-sight coverage and excess-loss-limited cell range.
    Coverage {
        #[arg(long)]
        max_path_loss_db: Option<f64>,
        #[arg(long)]
        carrier_freq_hz: Option<f64>,
        /// Excess loss in dB/km.
        #[arg(long)]
        alpha: Option<f64>,
        /// Accept an excess-loss rate outside the 5-10 dB/km envelope.
        #[arg(long)]
        alpha_override: bool,
        /// Skip the 5.091-5.150 GHz band check on the carrier.
        #[arg(long)]
        any_band: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Doppler, ICI, signal-to-ICI and coherence time over a speed range.
    DopplerSweep {
        /// Lowest speed, e.g. `0`, `10mps`, `36kmh`.
        #[arg(long, value_parser = parse_speed)]
        v_min: f64,
        #[arg(long, value_parser = parse_speed)]
        v_max: f64,
        #[arg(long, value_parser = parse_speed)]
        step: f64,
        #[arg(long)]
        carrier_freq_hz: Option<f64>,
        #[arg(long)]
        es_dbm: Option<f64>,
        /// Time offset between subcarrier indices in the ICI sum.
        #[arg(long, value_enum, default_value_t = InterpretationArg::Sample)]
        interpretation: InterpretationArg,
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Speed limit implied by the subcarrier spacing.
    MaxSpeed {
        /// Subcarrier spacing to start from (default: the nominal 10 kHz).
        #[arg(long, conflicts_with = "spacing_from_profile")]
        spacing_hz: Option<f64>,
        /// Use the profile's exact BW/(N+1) spacing instead of the nominal 10 kHz.
        #[arg(long)]
        spacing_from_profile: bool,
        #[arg(long)]
        carrier_freq_hz: Option<f64>,
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte Carlo experiments.
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Ground-station positions along a corridor.
    Plan {
        /// Corridor length, e.g. `10km`.
        #[arg(long, value_parser = parse_length)]
        length: f64,
        /// Cell radius, e.g. `2.5km`.
        #[arg(long, value_parser = parse_length)]
        radius: f64,
        /// Minimum number of stations in range everywhere.
        #[arg(long, default_value_t = 2)]
        redundancy: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum SimulateCommand {
    /// Empirical ICI against the analytic model.
    Ici {
        /// Normalized Doppler f_D * Ts.
        #[arg(long)]
        fd_ts: f64,
        #[arg(long, default_value_t = 64)]
        n_subcarriers: u32,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 64)]
        oscillators: u32,
        #[arg(long, value_enum, default_value_t = ConstellationArg::Qpsk)]
        constellation: ConstellationArg,
        /// Run seed (required).
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Symbol errors from a two-path echo against the cyclic prefix.
    Cp {
        #[arg(long, default_value_t = 512)]
        n_subcarriers: u32,
        #[arg(long)]
        cp_samples: u32,
        #[arg(long)]
        echo_delay: u32,
        #[arg(long)]
        echo_gain: f64,
        /// Number of OFDM symbols.
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum InterpretationArg {
    Sample,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ConstellationArg {
    Qpsk,
    Qam16,
}

/// Profile selection and inline overrides of its fields.
#[derive(Debug, Clone, Default, Args)]
pub struct ProfileArgs {
    /// Named profile (`aeromacs-default`).
    #[arg(long)]
    pub profile: Option<String>,
    #[arg(long)]
    pub bandwidth_hz: Option<f64>,
    /// DFT size.
    #[arg(long)]
    pub fft_size: Option<u32>,
    /// k in G = 1/2^k.
    #[arg(long)]
    pub cp_ratio_log2: Option<u32>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

fn base_config(cli_config: &Option<PathBuf>, default_format: Format) -> Result<RunConfig, CliError> {
    let file = match cli_config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    RunConfig::from_file(file, default_format)
}

fn apply_profile(cfg: &mut RunConfig, args: &ProfileArgs) -> Result<(), CliError> {
    if let Some(name) = &args.profile {
        let (name, profile) = resolve_profile(name)?;
        cfg.profile_name = name;
        cfg.profile = profile;
    }
    let p = &mut cfg.profile;
    let mut overridden = false;
    if let Some(bw) = args.bandwidth_hz {
        p.bandwidth_hz = bw;
        overridden = true;
    }
    if let Some(n) = args.fft_size {
        // Data and pilot counts stay; the null band absorbs the size change.
        let dl_fixed = p.dl_data_subcarriers + p.dl_pilot_subcarriers;
        let ul_fixed = p.ul_data_subcarriers + p.ul_pilot_subcarriers;
        if n < dl_fixed.max(ul_fixed) {
            return Err(CliError::Input(format!(
                "fft_size {n} is smaller than the profile's data + pilot subcarriers"
            )));
        }
        p.n_subcarriers = n;
        p.dl_null_subcarriers = n - dl_fixed;
        p.ul_null_subcarriers = n - ul_fixed;
        overridden = true;
    }
    if let Some(k) = args.cp_ratio_log2 {
        p.cp_ratio_log2 = k;
        overridden = true;
    }
    if overridden {
        cfg.profile_name = format!("{}+overrides", cfg.profile_name);
    }
    Ok(())
}

fn apply_output(cfg: &mut RunConfig, args: &OutputArgs) {
    if let Some(f) = args.format {
        cfg.format = f;
    }
    if let Some(path) = &args.output {
        cfg.output = Some(path.clone());
    }
}

/// Runs one command line, writing the result to `stdout` or the `--output` file.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    write!(stdout, "{e}").map_err(|e| CliError::Internal(e.to_string()))
                }
                _ => Err(CliError::Input(e.to_string())),
            };
        }
    };
    let (report, cfg) = dispatch(&cli)?;
    let text = report.render(cfg.format);
    match &cfg.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Internal(e.to_string())),
    }
}

fn dispatch(cli: &Cli) -> Result<(report::Report, RunConfig), CliError> {
    match &cli.command {
        Command::Params {
            profile,
            dl_symbols,
            output,
        } => {
            let mut cfg = base_config(&cli.config, Format::Csv)?;
            apply_profile(&mut cfg, profile)?;
            apply_output(&mut cfg, output);
            cfg.validate()?;
            Ok((params_report(&cfg, *dl_symbols)?, cfg))
        }
        Command::Coverage {
            max_path_loss_db,
            carrier_freq_hz,
            alpha,
            alpha_override,
            any_band,
            output,
        } => {
            let mut cfg = base_config(&cli.config, Format::Csv)?;
            if let Some(v) = max_path_loss_db {
                cfg.max_path_loss_db = *v;
            }
            if let Some(v) = carrier_freq_hz {
                cfg.carrier_freq_hz = *v;
            }
            if let Some(v) = alpha {
                cfg.excess_loss_alpha = *v;
            }
            apply_output(&mut cfg, output);
            cfg.validate()?;
            Ok((coverage_report(&cfg, *alpha_override, !*any_band)?, cfg))
        }
        Command::DopplerSweep {
            v_min,
            v_max,
            step,
            carrier_freq_hz,
            es_dbm,
            interpretation,
            profile,
            output,
        } => {
            let mut cfg = base_config(&cli.config, Format::Csv)?;
            apply_profile(&mut cfg, profile)?;
            if let Some(v) = carrier_freq_hz {
                cfg.carrier_freq_hz = *v;
            }
            if let Some(v) = es_dbm {
                cfg.es_dbm = *v;
            }
            apply_output(&mut cfg, output);
            cfg.validate()?;
            let range = SweepRange::new(*v_min, *v_max, *step)?;
            let interp = match interpretation {
                InterpretationArg::Sample => crate::IciInterpretation::SamplePeriod,
                InterpretationArg::Literal => crate::IciInterpretation::Literal,
            };
            Ok((doppler_sweep(&cfg, &range, interp)?, cfg))
        }
        Command::MaxSpeed {
            spacing_hz,
            spacing_from_profile,
            carrier_freq_hz,
            profile,
            output,
        } => {
            let mut cfg = base_config(&cli.config, Format::Csv)?;
            apply_profile(&mut cfg, profile)?;
            if let Some(v) = carrier_freq_hz {
                cfg.carrier_freq_hz = *v;
            }
            apply_output(&mut cfg, output);
            cfg.validate()?;
            let source = match (spacing_hz, spacing_from_profile) {
                (Some(v), _) => SpacingSource::Explicit(*v),
                (None, true) => SpacingSource::Profile,
                (None, false) => SpacingSource::Nominal,
            };
            Ok((max_speed_report(&cfg, source)?, cfg))
        }
        Command::Simulate(SimulateCommand::Ici {
            fd_ts,
            n_subcarriers,
            trials,
            oscillators,
            constellation,
            seed,
            output,
        }) => {
            let mut cfg = base_config(&cli.config, Format::Json)?;
            apply_output(&mut cfg, output);
            let spec = crate::simulator::SimulationSpec {
                n_subcarriers: *n_subcarriers,
                fd_ts: *fd_ts,
                trials: *trials,
                seed: *seed,
                oscillators: *oscillators,
                constellation: match constellation {
                    ConstellationArg::Qpsk => crate::simulator::Constellation::Qpsk,
                    ConstellationArg::Qam16 => crate::simulator::Constellation::Qam16,
                },
            };
            Ok((simulate_ici_report(&spec)?, cfg))
        }
        Command::Simulate(SimulateCommand::Cp {
            n_subcarriers,
            cp_samples,
            echo_delay,
            echo_gain,
            trials,
            seed,
            output,
        }) => {
            let mut cfg = base_config(&cli.config, Format::Json)?;
            apply_output(&mut cfg, output);
            let spec = crate::simulator::CpIsiSpec {
                n_subcarriers: *n_subcarriers,
                cp_samples: *cp_samples,
                echo_delay_samples: *echo_delay,
                echo_gain: *echo_gain,
                trials: *trials,
                seed: *seed,
            };
            Ok((simulate_cp_report(&spec)?, cfg))
        }
        Command::Plan {
            length,
            radius,
            redundancy,
            output,
        } => {
            let mut cfg = base_config(&cli.config, Format::Csv)?;
            apply_output(&mut cfg, output);
            Ok((plan_report(*length, *radius, *redundancy)?, cfg))
        }
    }
}

/// Entry point for the binary: runs and maps the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(args, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let _ = lock.flush();
            eprintln!("aeromacs: {e}");
            e.exit_code()
        }
    }
}

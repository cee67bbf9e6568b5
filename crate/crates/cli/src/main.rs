//! `lpequiv`: sparsest-solution analysis of small underdetermined systems.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse or usage error,
//! 3 inconsistent system or zero right-hand side, 4 size limit exceeded,
//! 5 corank mismatch.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lpequiv_core::Error;

use config::{parse_p_list, Format, PList, RunConfig, TRange};

/// Invalid invocation or unreadable input.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

#[derive(Parser)]
#[command(name = "lpequiv", version, about)]
struct Cli {
    /// TOML settings file.
    #[arg(long, global = true, env = "LPEQUIV_CONFIG")]
    config: Option<PathBuf>,

    /// Output format; defaults to the config file's, then json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: decomposition, sparsest solutions, exponent bound and
    /// checks at each exponent.
    Analyze {
        file: PathBuf,
        /// Radius used in the bound instead of max(r0, r1).
        #[arg(long)]
        radius: Option<f64>,
        /// Comma-separated exponents to check.
        #[arg(long, value_parser = parse_p_list)]
        p: Option<PList>,
    },
    /// All minimisers of ||x||_0 or of sum |x_i|^p.
    Solve {
        file: PathBuf,
        #[arg(long, conflicts_with = "l0", required_unless_present = "l0")]
        p: Option<f64>,
        #[arg(long)]
        l0: bool,
        /// Box radius for the vertex search.
        #[arg(long, requires = "p")]
        radius: Option<f64>,
    },
    /// CSV of the objective along the solution line of a corank-one system.
    Curve {
        file: PathBuf,
        #[arg(long, value_parser = parse_p_list)]
        p_list: Option<PList>,
        /// MIN:MAX:STEPS
        #[arg(long, value_parser = TRange::parse, allow_hyphen_values = true)]
        t_range: Option<TRange>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Checks equivalence at each exponent of an ascending grid.
    Scan {
        file: PathBuf,
        #[arg(long, value_parser = parse_p_list)]
        p_grid: Option<PList>,
        #[arg(long)]
        radius: Option<f64>,
    },
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let cfg = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(|e| Usage(format!("{e:#}")))?,
        None => RunConfig::default(),
    };
    let settings = cfg.settings();
    let format = cli.format.or(cfg.output_format).unwrap_or(Format::Json);
    let p_default = |fallback: &[f64]| cfg.p_values.clone().unwrap_or_else(|| fallback.to_vec());
    match cli.command {
        Command::Analyze { file, radius, p } => {
            let inst = commands::load_instance(&file, &settings)?;
            let p = p
                .map(|l| l.0)
                .unwrap_or_else(|| p_default(&commands::DEFAULT_GRID));
            commands::analyze(&inst, &p, radius.or(cfg.radius_override), format, &settings)
        }
        Command::Solve {
            file, p, radius, ..
        } => {
            let inst = commands::load_instance(&file, &settings)?;
            commands::solve(&inst, p, radius, format, &settings)
        }
        Command::Curve {
            file,
            p_list,
            t_range,
            out,
        } => {
            let range = t_range
                .or(cfg.t_range)
                .ok_or_else(|| Usage("curve needs --t-range or t_range in the config".into()))?;
            let inst = commands::load_instance(&file, &settings)?;
            let p = p_list
                .map(|l| l.0)
                .unwrap_or_else(|| p_default(&commands::DEFAULT_CURVE_P));
            commands::curve(&inst, &p, range, &out, format, &settings)
        }
        Command::Scan {
            file,
            p_grid,
            radius,
        } => {
            let inst = commands::load_instance(&file, &settings)?;
            let grid = p_grid
                .map(|l| l.0)
                .unwrap_or_else(|| p_default(&commands::DEFAULT_GRID));
            commands::scan(
                &inst,
                &grid,
                radius.or(cfg.radius_override),
                format,
                &settings,
            )
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::Parse { .. }
            | Error::InvalidShape(_)
            | Error::InvalidExponent(_)
            | Error::InvalidRadius(_)
            | Error::DimensionMismatch { .. },
        ) => 2,
        Some(
            Error::InconsistentSystem { .. } | Error::ZeroRhs | Error::NotUnderdetermined { .. },
        ) => 3,
        Some(Error::BlowupLimit { .. }) => 4,
        Some(Error::CorankMismatch(_)) => 5,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

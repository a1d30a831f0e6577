//! Command-line driver that prints each computed table next to an
//! independent oracle.

pub mod commands;
pub mod config;
pub mod error;
pub mod format;

use std::io::Write;
use std::path::PathBuf;

use actionvar_core::SchemeTag;
use clap::{Args, Parser, Subcommand};

pub use config::{OutputFormat, Overrides, RunConfig};
pub use error::{CliError, Result};
pub use format::{fmt_sig, Cell, Column, Table};

#[derive(Debug, Parser)]
#[command(name = "actionvar", version, about = "Action variables and spectra of relativistic and anharmonic oscillators")]
pub struct Cli {
    /// File of `key = value` lines; flags given here take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Unit system, e.g. m=1,k=1,hbar=1,c=10.
    #[arg(long, global = true)]
    pub units: Option<String>,
    /// Also write the result as CSV to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Format written to standard output.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Relative tolerance for formula-vs-oracle flags.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Print the scheme tag and formula behind each column.
    #[arg(long, global = true)]
    pub show_scheme: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default)]
pub struct EpsArgs {
    /// Comma-separated values of ε = Ẽ/mc².
    #[arg(long, value_delimiter = ',')]
    pub eps: Option<Vec<f64>>,
}

#[derive(Debug, Args, Default)]
pub struct LevelArgs {
    /// ħω₀/mc²; 0 gives the non-relativistic limit.
    #[arg(long)]
    pub ratio: Option<f64>,
    /// Highest level reported.
    #[arg(long)]
    pub nmax: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classical action from four schemes with quadrature oracles.
    Table1(EpsArgs),
    /// Energy-level corrections from four schemes with a diagonalization oracle.
    Table2(LevelArgs),
    /// Frequency shift from the action and from RK4 trajectories.
    Freq(EpsArgs),
    /// Spectrum of one scheme next to the diagonalization oracle.
    Levels {
        /// sho, sho-xdp, wr-pdx, wr-xdp, aho, jwkb or rs.
        #[arg(long)]
        scheme: String,
        #[command(flatten)]
        level: LevelArgs,
        /// Quartic strength δ for the anharmonic scheme.
        #[arg(long)]
        delta: Option<f64>,
    },
}

impl Cli {
    fn overrides(&self) -> Overrides {
        let mut o = Overrides {
            units: self.units.clone(),
            output_path: self.csv.clone(),
            format: self.format,
            tolerance: self.tol,
            show_scheme: self.show_scheme.then_some(true),
            ..Default::default()
        };
        match &self.command {
            Command::Table1(a) | Command::Freq(a) => o.epsilons = a.eps.clone(),
            Command::Table2(l) => {
                o.ratio = l.ratio;
                o.n_max = l.nmax;
            }
            Command::Levels { level, delta, .. } => {
                o.ratio = level.ratio;
                o.n_max = level.nmax;
                o.delta = *delta;
            }
        }
        o
    }

    /// Defaults, then `ACTIONVAR_TOL`, then the config file, then flags.
    pub fn run_config(&self) -> Result<RunConfig> {
        let mut o = Overrides {
            tolerance: config::env_tolerance()?,
            ..Default::default()
        };
        if let Some(path) = &self.config {
            o = o.merge(config::read_config_file(path)?);
        }
        RunConfig::from_overrides(o.merge(self.overrides()))
    }
}

/// Computes the requested report.
pub fn build_table(command: &Command, cfg: &RunConfig) -> Result<Table> {
    match command {
        Command::Table1(_) => commands::cmd_table1(cfg),
        Command::Table2(_) => commands::cmd_table2(cfg),
        Command::Freq(_) => commands::cmd_frequency(cfg),
        Command::Levels { scheme, .. } => {
            let tag: SchemeTag = scheme.parse().map_err(|_| CliError::UnknownScheme(scheme.clone()))?;
            commands::cmd_levels(cfg, tag)
        }
    }
}

/// Runs a parsed command line, writing the report to `out` and the CSV file
/// if one was requested.
pub fn run<W: Write>(cli: &Cli, out: &mut W) -> Result<()> {
    let cfg = cli.run_config()?;
    let table = build_table(&cli.command, &cfg)?;
    let stdout_err = |source| CliError::IoFailure {
        path: PathBuf::from("<stdout>"),
        source,
    };
    if cfg.show_scheme {
        out.write_all(table.scheme_legend().as_bytes()).map_err(stdout_err)?;
    }
    let body = match cfg.format {
        OutputFormat::Table => table.to_text(),
        OutputFormat::Csv => table.to_csv(),
    };
    out.write_all(body.as_bytes()).map_err(stdout_err)?;
    if let Some(path) = &cfg.output_path {
        std::fs::write(path, table.to_csv()).map_err(|source| CliError::IoFailure {
            path: path.clone(),
            source,
        })?;
    }
    Ok(())
}

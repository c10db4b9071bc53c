//! Command-line front end for the asymmetric two-queue model.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod svg;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{RunConfig, Settings};
pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "asymq", version, about = "Simulate and analyse two queues driven by delayed queue-length information")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Flat `key = value` configuration file; flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output file (a directory for `figure`). Data goes to stdout when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot next to the CSV output.
    #[arg(long, global = true)]
    pub svg: bool,
    /// Locate the Hopf point by simulation as well.
    #[arg(long, global = true)]
    pub empirical: bool,
    #[arg(long, global = true)]
    pub t_end: Option<f64>,
    #[arg(long, global = true)]
    pub steps_per_delay: Option<usize>,
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    #[arg(long, global = true)]
    pub mu: Option<f64>,
    #[arg(long, global = true)]
    pub theta: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda_hat: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu_hat: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub theta_hat: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha_hat: Option<f64>,
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q1_init: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q2_init: Option<f64>,
    /// Write the effective configuration to PATH before running.
    #[arg(long, global = true, value_name = "PATH")]
    pub dump_config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    Table1,
    Table2,
    Table3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare the first-order equilibrium with the exact fixed point.
    Equilibrium,
    /// Integrate the delay system and write the trajectory.
    Simulate,
    /// Critical delays, optionally checked by bisection on simulations.
    Hopf {
        /// Bisection bracket; defaults to 0.8 and 1.2 times the predicted delay.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
        bracket: Option<Vec<f64>>,
        #[arg(long, default_value_t = asymq_core::analysis::DEFAULT_HOPF_TOLERANCE)]
        tol: f64,
    },
    /// Predicted and measured limit-cycle amplitudes.
    Amplitude {
        /// Delay as an offset above the first-order critical delay (instead of --delta).
        #[arg(long, allow_hyphen_values = true)]
        offset: Option<f64>,
        /// Accept a delay exactly at the critical delay.
        #[arg(long)]
        allow_critical: bool,
        /// Fraction of the horizon discarded before measuring.
        #[arg(long, default_value_t = 0.8)]
        tail: f64,
    },
    /// Reproduce one of the equilibrium tables.
    Table {
        #[arg(value_enum)]
        name: TableName,
    },
    /// Reproduce a figure's trajectories (both panels).
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=14))]
        number: u8,
    },
}

impl GlobalArgs {
    /// Config file values with command-line overrides applied.
    pub fn settings(&self) -> Result<Settings> {
        let mut s = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        let floats = [
            (&mut s.lambda, self.lambda),
            (&mut s.mu, self.mu),
            (&mut s.theta, self.theta),
            (&mut s.alpha, self.alpha),
            (&mut s.lambda_hat, self.lambda_hat),
            (&mut s.mu_hat, self.mu_hat),
            (&mut s.theta_hat, self.theta_hat),
            (&mut s.alpha_hat, self.alpha_hat),
            (&mut s.epsilon, self.epsilon),
            (&mut s.q1_init, self.q1_init),
            (&mut s.q2_init, self.q2_init),
        ];
        for (slot, value) in floats {
            if let Some(v) = value {
                *slot = v;
            }
        }
        s.delta = self.delta.or(s.delta);
        s.t_end = self.t_end.or(s.t_end);
        s.steps_per_delay = self.steps_per_delay.or(s.steps_per_delay);
        Ok(s)
    }
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> Result<()> {
    let settings = cli.global.settings()?;
    if let Some(path) = &cli.global.dump_config {
        output::write_atomic(path, |w| w.write_all(settings.to_text().as_bytes()))?;
    }
    let config = RunConfig::from_settings(&settings)?;
    let g = &cli.global;
    match &cli.command {
        Command::Equilibrium => commands::equilibrium(&config, g, stdout),
        Command::Simulate => commands::simulate(&config, g, stdout),
        Command::Hopf { bracket, tol } => {
            let bracket = bracket.as_ref().map(|b| (b[0], b[1]));
            commands::hopf(&config, g, bracket, *tol, stdout)
        }
        Command::Amplitude {
            offset,
            allow_critical,
            tail,
        } => commands::amplitude(&config, g, *offset, *allow_critical, *tail, stdout),
        Command::Table { name } => commands::table(*name, g, stdout),
        Command::Figure { number } => commands::figure(*number, &config, g, stdout),
    }
}

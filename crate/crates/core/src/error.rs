use thiserror::Error;

use crate::model::QueuePair;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad parameters or configuration.
    InvalidInput,
    /// Divergence, non-convergence, failed measurement.
    Numerical,
    /// The requested quantity does not exist in this parameter regime.
    Regime,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("integration diverged after t = {last_valid_time}")]
    Diverged { last_valid_time: f64 },

    #[error("no Hopf bifurcation: requires lambda*theta > 2*mu, got {lambda_theta} <= {two_mu}")]
    NoBifurcation { lambda_theta: f64, two_mu: f64 },

    #[error("no imaginary-axis crossing: requires C > mu, got C = {gain}, mu = {mu}")]
    NoCrossing { gain: f64, mu: f64 },

    #[error("no limit cycle: delay {delta} is below the critical delay {delta_mod}")]
    NoLimitCycle { delta: f64, delta_mod: f64 },

    #[error("amplitude formula outside its valid regime: denominator {denominator} is not positive")]
    InvalidRegime { denominator: f64 },

    #[error("Newton iteration did not converge after {iterations} iterations (residual {residual:e}, last iterate ({}, {}))", last.q1, last.q2)]
    NoConvergence {
        iterations: usize,
        residual: f64,
        last: QueuePair,
    },

    #[error("amplitude measurement failed: {0}")]
    Measurement(String),

    #[error("stability classification inconclusive: window amplitudes {early:e} -> {late:e}")]
    Inconclusive { early: f64, late: f64 },

    #[error("invalid bisection bracket [{lo}, {hi}]: both ends classify as {class}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        class: &'static str,
    },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidParameter { .. } | Error::NonFinite(_) | Error::InvalidBracket { .. } => {
                ErrorKind::InvalidInput
            }
            Error::Diverged { .. }
            | Error::NoConvergence { .. }
            | Error::Measurement(_)
            | Error::Inconclusive { .. } => ErrorKind::Numerical,
            Error::NoBifurcation { .. }
            | Error::NoCrossing { .. }
            | Error::NoLimitCycle { .. }
            | Error::InvalidRegime { .. } => ErrorKind::Regime,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

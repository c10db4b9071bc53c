//! Exact equilibria by Newton iteration and comparison against the first-order formula.

use std::fmt;
use std::str::FromStr;

use crate::asymptotics::approx_equilibrium;
use crate::error::{Error, Result};
use crate::model::{ModelParams, Perturbation, QueueModel, QueuePair};

pub const NEWTON_MAX_ITERATIONS: usize = 100;
pub const NEWTON_RESIDUAL_TOL: f64 = 1e-12;
/// Relative forward-difference step for the Jacobian.
pub const JACOBIAN_REL_STEP: f64 = 1e-7;
/// Smallest damping factor tried before accepting a Newton step anyway.
const MIN_NEWTON_STEP: f64 = 1e-6;

fn residual(model: &QueueModel, q: QueuePair) -> QueuePair {
    model.rhs_raw(q, q)
}

/// Solves `rhs(q, q) = 0`. Equilibria do not depend on the delay because a
/// constant solution has `q(t) = q(t - delta)`.
pub fn fixed_point_equilibrium(model: &QueueModel) -> Result<QueuePair> {
    let mut q = QueuePair::splat(model.params().symmetric_equilibrium());
    let mut r = residual(model, q);
    for _ in 0..NEWTON_MAX_ITERATIONS {
        if r.max_abs() < NEWTON_RESIDUAL_TOL {
            return Ok(q);
        }
        let h1 = JACOBIAN_REL_STEP * q.q1.abs().max(1.0);
        let h2 = JACOBIAN_REL_STEP * q.q2.abs().max(1.0);
        let c1 = residual(model, QueuePair::new(q.q1 + h1, q.q2));
        let c2 = residual(model, QueuePair::new(q.q1, q.q2 + h2));
        let (j11, j21) = ((c1.q1 - r.q1) / h1, (c1.q2 - r.q2) / h1);
        let (j12, j22) = ((c2.q1 - r.q1) / h2, (c2.q2 - r.q2) / h2);
        let det = j11 * j22 - j12 * j21;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let d1 = (j22 * r.q1 - j12 * r.q2) / det;
        let d2 = (j11 * r.q2 - j21 * r.q1) / det;
        // Backtrack: the logit saturates for large theta * q and full steps overshoot.
        let mut step = 1.0;
        let (next, next_r) = loop {
            let trial = QueuePair::new(q.q1 - step * d1, q.q2 - step * d2);
            let tr = residual(model, trial);
            if (trial.is_finite() && tr.max_abs() < r.max_abs()) || step < MIN_NEWTON_STEP {
                break (trial, tr);
            }
            step *= 0.5;
        };
        if !next.is_finite() {
            break;
        }
        q = next;
        r = next_r;
    }
    if r.max_abs() < NEWTON_RESIDUAL_TOL {
        return Ok(q);
    }
    Err(Error::NoConvergence {
        iterations: NEWTON_MAX_ITERATIONS,
        residual: r.max_abs(),
        last: q,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumReport {
    pub approx: QueuePair,
    pub exact: QueuePair,
    pub error_q1: f64,
    pub error_q2: f64,
    /// `max |rhs|` at the exact equilibrium.
    pub residual: f64,
}

pub fn equilibrium_report(model: &QueueModel) -> Result<EquilibriumReport> {
    let approx = approx_equilibrium(model);
    let exact = fixed_point_equilibrium(model)?;
    Ok(EquilibriumReport {
        approx,
        exact,
        error_q1: (approx.q1 - exact.q1).abs(),
        error_q2: (approx.q2 - exact.q2).abs(),
        residual: residual(model, exact).max_abs(),
    })
}

/// Which hat parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HatName {
    Lambda,
    Mu,
    Theta,
    Alpha,
}

impl HatName {
    pub fn apply(self, mut pert: Perturbation, value: f64) -> Perturbation {
        match self {
            HatName::Lambda => pert.lambda_hat = value,
            HatName::Mu => pert.mu_hat = value,
            HatName::Theta => pert.theta_hat = value,
            HatName::Alpha => pert.alpha_hat = value,
        }
        pert
    }

    pub fn column(self) -> &'static str {
        match self {
            HatName::Lambda => "lambda_hat",
            HatName::Mu => "mu_hat",
            HatName::Theta => "theta_hat",
            HatName::Alpha => "alpha_hat",
        }
    }
}

impl fmt::Display for HatName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

impl FromStr for HatName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "lambda" | "lambda_hat" => Ok(HatName::Lambda),
            "mu" | "mu_hat" => Ok(HatName::Mu),
            "theta" | "theta_hat" => Ok(HatName::Theta),
            "alpha" | "alpha_hat" => Ok(HatName::Alpha),
            other => Err(format!("unknown hat parameter `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub hat_value: f64,
    pub model: QueueModel,
    pub report: EquilibriumReport,
}

/// One equilibrium report per value of the swept hat parameter, with every other
/// perturbation component taken from `fixed`.
pub fn epsilon_sweep(
    params: ModelParams,
    hat: HatName,
    values: &[f64],
    fixed: Perturbation,
) -> Result<Vec<SweepRow>> {
    values
        .iter()
        .map(|&v| {
            let model = QueueModel::new(params, hat.apply(fixed, v))?;
            Ok(SweepRow {
                hat_value: v,
                model,
                report: equilibrium_report(&model)?,
            })
        })
        .collect()
}

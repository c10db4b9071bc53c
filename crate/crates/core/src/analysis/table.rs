//! CSV layouts mirroring the equilibrium tables (4-decimal fixed formatting).

use std::io::{self, Write};

use super::equilibrium::{EquilibriumReport, HatName, SweepRow};
use crate::model::QueueModel;

pub const FULL_HEADER: &str = "lambda,lambda_hat,mu,mu_hat,theta,theta_hat,alpha,alpha_hat,epsilon,\
q1_hat,q1,q1_error,q2_hat,q2,q2_error";

fn report_columns(r: &EquilibriumReport) -> String {
    format!(
        "{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}",
        r.approx.q1, r.exact.q1, r.error_q1, r.approx.q2, r.exact.q2, r.error_q2
    )
}

/// One row per configuration with every parameter spelled out.
pub fn write_full_table<W: Write>(
    rows: &[(QueueModel, EquilibriumReport)],
    mut out: W,
) -> io::Result<()> {
    writeln!(out, "{FULL_HEADER}")?;
    for (model, report) in rows {
        let p = model.params();
        let h = model.perturbation();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            p.lambda(),
            h.lambda_hat,
            p.mu(),
            h.mu_hat,
            p.theta(),
            h.theta_hat,
            p.alpha(),
            h.alpha_hat,
            h.epsilon,
            report_columns(report)
        )?;
    }
    Ok(())
}

/// One row per swept value: `<hat>,q1_hat,q1,q1_error,q2_hat,q2,q2_error`.
pub fn write_sweep_table<W: Write>(hat: HatName, rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{},q1_hat,q1,q1_error,q2_hat,q2,q2_error", hat.column())?;
    for row in rows {
        writeln!(out, "{},{}", row.hat_value, report_columns(&row.report))?;
    }
    Ok(())
}

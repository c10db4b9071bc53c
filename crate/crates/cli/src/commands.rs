use std::io::{self, Write};
use std::path::{Path, PathBuf};

use asymq_core::analysis::table::{write_full_table, write_sweep_table};
use asymq_core::analysis::{
    epsilon_sweep, equilibrium_report, fixed_point_equilibrium, locate_hopf_empirically,
    measure_amplitude, peak_to_peak, StabilitySettings,
};
use asymq_core::asymptotics::{critical_delay_modified, lindstedt_amplitude};
use asymq_core::dde::{
    integrate, HistorySpec, IntegrationConfig, Trajectory, DEFAULT_AMPLITUDE_HORIZON,
    DEFAULT_EQUILIBRIUM_HORIZON, DEFAULT_STEPS_PER_DELAY,
};
use asymq_core::{Error, QueueModel, QueuePair};

use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::{create_dir, emit, write_atomic};
use crate::presets::{self, FigureKind};
use crate::svg::{self, Chart, HLine, Series};
use crate::{GlobalArgs, TableName};

const Q1_COLOR: &str = "#1f77b4";
const Q2_COLOR: &str = "#d62728";

fn stdout_err(source: io::Error) -> CliError {
    CliError::Write {
        path: PathBuf::from("<stdout>"),
        source,
    }
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(stdout_err)?
    };
}

fn svg_path(g: &GlobalArgs) -> Result<Option<PathBuf>> {
    match (&g.out, g.svg) {
        (_, false) => Ok(None),
        (Some(out), true) => Ok(Some(out.with_extension("svg"))),
        (None, true) => Err(CliError::Usage("--svg needs --out to know where to write".into())),
    }
}

fn trajectory_svg(path: &Path, traj: &Trajectory, title: String, lines: Vec<HLine>) -> Result<()> {
    let chart = Chart {
        title,
        x_label: "t",
        y_label: "queue length",
        series: vec![
            Series { label: "q1", xs: traj.times(), ys: traj.q1(), color: Q1_COLOR },
            Series { label: "q2", xs: traj.times(), ys: traj.q2(), color: Q2_COLOR },
        ],
        lines,
    };
    let text = svg::render(&chart);
    write_atomic(path, |w| w.write_all(text.as_bytes()))
}

/// Dashed lines at `q* +/- amplitude / 2` for both queues.
fn bands(eq: QueuePair, amplitude: f64) -> Vec<HLine> {
    let h = 0.5 * amplitude;
    vec![
        HLine { y: eq.q1 + h, label: "q1* +/- A/2".into(), color: Q1_COLOR },
        HLine { y: eq.q1 - h, label: String::new(), color: Q1_COLOR },
        HLine { y: eq.q2 + h, label: "q2* +/- A/2".into(), color: Q2_COLOR },
        HLine { y: eq.q2 - h, label: String::new(), color: Q2_COLOR },
    ]
}

fn integration(config: &RunConfig, delta: f64, default_horizon: f64) -> Result<IntegrationConfig> {
    Ok(IntegrationConfig::new(
        delta,
        config.t_end.unwrap_or(default_horizon),
        config.steps_per_delay.unwrap_or(DEFAULT_STEPS_PER_DELAY),
    )?)
}

pub fn equilibrium(config: &RunConfig, g: &GlobalArgs, stdout: &mut dyn Write) -> Result<()> {
    let r = equilibrium_report(&config.model)?;
    say!(stdout, "     approx   exact    error");
    say!(stdout, "q1   {:.4}   {:.4}   {:.4}", r.approx.q1, r.exact.q1, r.error_q1);
    say!(stdout, "q2   {:.4}   {:.4}   {:.4}", r.approx.q2, r.exact.q2, r.error_q2);
    say!(stdout, "residual {:.3e}", r.residual);
    if let Some(out) = &g.out {
        write_atomic(out, |w| write_full_table(&[(config.model, r)], w))?;
    }
    Ok(())
}

pub fn simulate(config: &RunConfig, g: &GlobalArgs, stdout: &mut dyn Write) -> Result<()> {
    let delta = config.require_delta()?;
    let svg = svg_path(g)?;
    let cfg = integration(config, delta, DEFAULT_EQUILIBRIUM_HORIZON)?;
    let traj = integrate(&config.model, &config.history, &cfg)?;
    emit(g.out.as_deref(), stdout, |w| traj.write_csv(w))?;
    if let Some(path) = svg {
        trajectory_svg(&path, &traj, format!("delta = {delta}"), Vec::new())?;
    }
    Ok(())
}

pub fn hopf(
    config: &RunConfig,
    g: &GlobalArgs,
    bracket: Option<(f64, f64)>,
    tol: f64,
    stdout: &mut dyn Write,
) -> Result<()> {
    let crit = critical_delay_modified(&config.model)?;
    let mut rows = vec![
        ("delta_cr", crit.symmetric.delta),
        ("omega_cr", crit.symmetric.omega),
        ("delta_mod_first_order", crit.delta_mod_first_order),
        ("delta_mod_closed_form", crit.delta_mod_closed_form),
        ("omega_mod", crit.omega_mod),
    ];
    if let Some(d) = crit.delta_mod_alpha_second_order {
        rows.push(("delta_mod_second_order", d));
    }
    if g.empirical {
        let dm = crit.delta_mod_first_order;
        let (lo, hi) = bracket.unwrap_or((0.8 * dm, 1.2 * dm));
        let defaults = StabilitySettings::default();
        let settings = StabilitySettings {
            t_end: config.t_end.unwrap_or(defaults.t_end),
            steps_per_delay: config.steps_per_delay.unwrap_or(defaults.steps_per_delay),
            ..defaults
        };
        let report = locate_hopf_empirically(&config.model, (lo, hi), tol, &settings)?;
        rows.push(("delta_empirical", report.empirical_delta));
        rows.push(("bracket_lo", report.final_bracket.0));
        rows.push(("bracket_hi", report.final_bracket.1));
        rows.push(("empirical_minus_first_order", report.empirical_delta - dm));
        rows.push(("probes", report.probes as f64));
    }
    for (name, value) in &rows {
        say!(stdout, "{name:<28} {value:.6}");
    }
    if let Some(out) = &g.out {
        write_atomic(out, |w| {
            writeln!(w, "quantity,value")?;
            for (name, value) in &rows {
                writeln!(w, "{name},{value}")?;
            }
            Ok(())
        })?;
    }
    Ok(())
}

pub fn amplitude(
    config: &RunConfig,
    g: &GlobalArgs,
    offset: Option<f64>,
    allow_critical: bool,
    tail: f64,
    stdout: &mut dyn Write,
) -> Result<()> {
    let model = &config.model;
    let crit = critical_delay_modified(model)?;
    let dm = crit.delta_mod_first_order;
    let delta = match (offset, config.delta) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --offset or a delay, not both".into())),
        (Some(off), None) => dm + off,
        (None, Some(d)) => d,
        (None, None) => return Err(CliError::Usage("amplitude needs --offset or --delta".into())),
    };
    if delta < dm || (delta == dm && !allow_critical) {
        return Err(Error::NoLimitCycle { delta, delta_mod: dm }.into());
    }
    let svg = svg_path(g)?;
    let prediction = lindstedt_amplitude(model, delta)?;
    let cfg = integration(config, delta, DEFAULT_AMPLITUDE_HORIZON)?;
    let traj = integrate(model, &config.history, &cfg)?;
    let measured = measure_amplitude(&traj, tail)?;
    let eq = fixed_point_equilibrium(model)?;
    let a = prediction.amplitude_tilde;

    say!(stdout, "delta                {delta:.6}");
    say!(stdout, "delta_mod            {dm:.6}");
    say!(stdout, "predicted amplitude  {a:.4}");
    say!(stdout, "measured q1          {:.4}", measured.q1_amplitude);
    say!(stdout, "measured q2          {:.4}", measured.q2_amplitude);
    say!(stdout, "q1 band              {:.4} .. {:.4}", eq.q1 - a / 2.0, eq.q1 + a / 2.0);
    say!(stdout, "q2 band              {:.4} .. {:.4}", eq.q2 - a / 2.0, eq.q2 + a / 2.0);
    if let Some(p) = measured.period_estimate {
        say!(
            stdout,
            "frequency            measured {:.4}, predicted {:.4}",
            2.0 * std::f64::consts::PI / p,
            prediction.predicted_frequency
        );
    }

    if let Some(out) = &g.out {
        write_atomic(out, |w| {
            writeln!(
                w,
                "delta,delta_mod,predicted,q1_measured,q2_measured,q1_eq,q2_eq,q1_band_low,q1_band_high,q2_band_low,q2_band_high"
            )?;
            writeln!(
                w,
                "{delta},{dm},{a},{},{},{},{},{},{},{},{}",
                measured.q1_amplitude,
                measured.q2_amplitude,
                eq.q1,
                eq.q2,
                eq.q1 - a / 2.0,
                eq.q1 + a / 2.0,
                eq.q2 - a / 2.0,
                eq.q2 + a / 2.0
            )
        })?;
    }
    if let Some(path) = svg {
        let title = format!("delta - delta_mod = {:.4}, predicted amplitude {a:.4}", delta - dm);
        trajectory_svg(&path, &traj, title, bands(eq, a))?;
    }
    Ok(())
}

pub fn table(name: TableName, g: &GlobalArgs, stdout: &mut dyn Write) -> Result<()> {
    match name {
        TableName::Table1 => {
            let rows = presets::table1_models()
                .into_iter()
                .map(|m| Ok((m, equilibrium_report(&m)?)))
                .collect::<asymq_core::Result<Vec<_>>>()?;
            emit(g.out.as_deref(), stdout, |w| write_full_table(&rows, w))
        }
        TableName::Table2 | TableName::Table3 => {
            let (params, hat, values, fixed) = presets::sweep(if name == TableName::Table2 { 2 } else { 3 });
            let rows = epsilon_sweep(params, hat, &values, fixed)?;
            emit(g.out.as_deref(), stdout, |w| write_sweep_table(hat, &rows, w))
        }
    }
}

pub fn figure(number: u8, config: &RunConfig, g: &GlobalArgs, stdout: &mut dyn Write) -> Result<()> {
    let fig = presets::figure(number)
        .ok_or_else(|| CliError::Usage(format!("no figure {number}; choose 1 to 14")))?;
    let dir = g.out.clone().unwrap_or_else(|| PathBuf::from(format!("figure-{number}")));
    create_dir(&dir)?;
    let model: QueueModel = fig.model;
    let history = HistorySpec::figure_default();
    say!(stdout, "figure {number}: {}", fig.description);
    for (panel, spec) in fig.panels {
        let delta = spec.resolve(&model)?;
        let cfg = integration(config, delta, fig.t_end)?;
        let traj = integrate(&model, &history, &cfg)?;
        let stem = format!("figure{number}_{panel}");
        let csv = dir.join(format!("{stem}.csv"));
        write_atomic(&csv, |w| traj.write_csv(w))?;

        let mut lines = Vec::new();
        let mut title = format!("figure {number} ({panel}), delta = {delta:.4}");
        match fig.kind {
            FigureKind::Trajectory => {
                let start = traj.index_at(0.8 * traj.t_end());
                say!(
                    stdout,
                    "{panel:<6} delta = {delta:.6}  tail peak-to-peak q1 = {:.4e}, q2 = {:.4e}",
                    peak_to_peak(&traj.q1()[start..]),
                    peak_to_peak(&traj.q2()[start..])
                );
            }
            FigureKind::Amplitude => {
                let a = lindstedt_amplitude(&model, delta)?.amplitude_tilde;
                let m = measure_amplitude(&traj, 0.8)?;
                let eq = fixed_point_equilibrium(&model)?;
                say!(
                    stdout,
                    "{panel:<6} delta = {delta:.6}  amplitudes q1 = {:.4}, q2 = {:.4}, predicted {a:.4}",
                    m.q1_amplitude,
                    m.q2_amplitude
                );
                lines = bands(eq, a);
                title = format!("{title}, predicted amplitude {a:.4}");
            }
        }
        if g.svg {
            trajectory_svg(&dir.join(format!("{stem}.svg")), &traj, title, lines)?;
        }
    }
    Ok(())
}

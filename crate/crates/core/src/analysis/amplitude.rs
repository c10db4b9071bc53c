use crate::dde::Trajectory;
use crate::error::{Error, Result};

/// Minimum number of oscillation periods the measurement tail must span.
pub const MIN_TAIL_PERIODS: f64 = 5.0;

/// Peak-to-peak amplitudes over the tail of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeMeasurement {
    pub q1_amplitude: f64,
    pub q2_amplitude: f64,
    /// Mean spacing of successive local maxima of `q1`; `None` when the tail
    /// does not oscillate.
    pub period_estimate: Option<f64>,
    pub tail_start: f64,
}

impl AmplitudeMeasurement {
    pub fn frequency(&self) -> Option<f64> {
        self.period_estimate
            .map(|p| 2.0 * std::f64::consts::PI / p)
    }
}

pub fn peak_to_peak(xs: &[f64]) -> f64 {
    let (lo, hi) = xs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    if xs.is_empty() {
        0.0
    } else {
        hi - lo
    }
}

fn local_maxima(xs: &[f64]) -> Vec<usize> {
    (1..xs.len().saturating_sub(1))
        .filter(|&i| xs[i] > xs[i - 1] && xs[i] >= xs[i + 1])
        .collect()
}

/// Measures amplitudes over `[tail_fraction * t_end, t_end]`.
pub fn measure_amplitude(traj: &Trajectory, tail_fraction: f64) -> Result<AmplitudeMeasurement> {
    if !(tail_fraction > 0.0 && tail_fraction < 1.0) {
        return Err(Error::Measurement(format!(
            "tail fraction {tail_fraction} outside (0, 1)"
        )));
    }
    let tail_start_time = tail_fraction * traj.t_end();
    let start = traj.index_at(tail_start_time);
    if traj.len().saturating_sub(start) < 3 {
        return Err(Error::Measurement("tail holds fewer than three samples".into()));
    }
    let tail_start = traj.times()[start];
    let q1 = &traj.q1()[start..];
    let q2 = &traj.q2()[start..];
    let times = &traj.times()[start..];

    let maxima = local_maxima(q1);
    if maxima.len() < 2 {
        return Ok(AmplitudeMeasurement {
            q1_amplitude: 0.0,
            q2_amplitude: 0.0,
            period_estimate: None,
            tail_start,
        });
    }
    let first = times[maxima[0]];
    let last = times[*maxima.last().unwrap()];
    let period = (last - first) / (maxima.len() - 1) as f64;
    let span = traj.t_end() - tail_start;
    if span < MIN_TAIL_PERIODS * period {
        return Err(Error::Measurement(format!(
            "tail of length {span} covers fewer than {MIN_TAIL_PERIODS} periods of {period}"
        )));
    }
    Ok(AmplitudeMeasurement {
        q1_amplitude: peak_to_peak(q1),
        q2_amplitude: peak_to_peak(q2),
        period_estimate: Some(period),
        tail_start,
    })
}

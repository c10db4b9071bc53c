//! Empirical stability classification and bisection for the Hopf point.

use std::fmt;

use super::amplitude::peak_to_peak;
use super::equilibrium::fixed_point_equilibrium;
use crate::asymptotics::{critical_delay_modified, ModifiedCriticalDelay};
use crate::dde::{integrate, integrate_undelayed, HistorySpec, IntegrationConfig, Trajectory};
use crate::error::{Error, Result};
use crate::model::QueueModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Oscillating,
}

impl Stability {
    pub fn as_str(self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Oscillating => "oscillating",
        }
    }
}

impl fmt::Display for Stability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StabilitySettings {
    pub t_end: f64,
    pub steps_per_delay: usize,
    /// Window-amplitude ratios within `1 +/- margin` count as neither growing nor decaying.
    pub margin: f64,
    /// Initial history is `(q1* - offset, q2* + offset)`.
    pub history_offset: f64,
    /// Late-window amplitude below which the deviation is treated as fully decayed.
    pub amplitude_floor: f64,
    /// Step for the undelayed (`delta = 0`) system.
    pub undelayed_step: f64,
}

impl Default for StabilitySettings {
    fn default() -> Self {
        Self {
            t_end: 200.0,
            steps_per_delay: 200,
            margin: 0.02,
            history_offset: 0.01,
            amplitude_floor: 1e-9,
            undelayed_step: 1e-3,
        }
    }
}

/// A flat window ratio counts as a sustained limit cycle once the oscillation has
/// grown this many times larger than the seeded perturbation.
pub const SATURATION_GROWTH: f64 = 10.0;

/// Peak-to-peak amplitudes over `[0.6, 0.8]` and `[0.8, 1.0]` of the horizon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowAmplitudes {
    pub early: f64,
    pub late: f64,
}

impl WindowAmplitudes {
    pub fn of(traj: &Trajectory) -> Self {
        let t = traj.t_end();
        let window = |a: f64, b: f64| {
            let (i, j) = (traj.index_at(a * t), traj.index_at(b * t).min(traj.len() - 1));
            peak_to_peak(&traj.q1()[i..=j]).max(peak_to_peak(&traj.q2()[i..=j]))
        };
        Self {
            early: window(0.6, 0.8),
            late: window(0.8, 1.0),
        }
    }

    /// Ratio test between the two windows. A flat ratio is a saturated limit cycle
    /// when the amplitude has grown well past the seeded perturbation `seed`
    /// (peak-to-peak), and inconclusive otherwise.
    pub fn classify(&self, margin: f64, floor: f64, seed: f64) -> Result<Stability> {
        if self.late < floor {
            return Ok(Stability::Stable);
        }
        let ratio = self.late / self.early;
        if ratio < 1.0 - margin {
            Ok(Stability::Stable)
        } else if ratio > 1.0 + margin || self.late > SATURATION_GROWTH * seed {
            Ok(Stability::Oscillating)
        } else {
            Err(Error::Inconclusive {
                early: self.early,
                late: self.late,
            })
        }
    }
}

fn simulate_from_offset(
    model: &QueueModel,
    delta: f64,
    settings: &StabilitySettings,
) -> Result<Trajectory> {
    let eq = fixed_point_equilibrium(model)?;
    let history = HistorySpec::offset_from(eq, settings.history_offset);
    if delta == 0.0 {
        integrate_undelayed(model, &history, settings.undelayed_step, settings.t_end)
    } else {
        let cfg = IntegrationConfig::new(delta, settings.t_end, settings.steps_per_delay)?;
        integrate(model, &history, &cfg)
    }
}

/// Integrates from the equilibrium-offset history and classifies the late-time
/// behaviour. Ratios inside the margin that the transient comparison cannot
/// resolve are returned as [`Error::Inconclusive`].
pub fn classify_stability(
    model: &QueueModel,
    delta: f64,
    settings: &StabilitySettings,
) -> Result<Stability> {
    if !(delta.is_finite() && delta >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
            reason: "delay must be non-negative",
        });
    }
    let traj = simulate_from_offset(model, delta, settings)?;
    WindowAmplitudes::of(&traj).classify(
        settings.margin,
        settings.amplitude_floor,
        2.0 * settings.history_offset,
    )
}

/// Classification that never reports inconclusive: the horizon is doubled once,
/// and a still-flat result is counted as oscillating.
pub fn classify_resolved(
    model: &QueueModel,
    delta: f64,
    settings: &StabilitySettings,
) -> Result<Stability> {
    match classify_stability(model, delta, settings) {
        Err(Error::Inconclusive { .. }) => {
            let longer = StabilitySettings {
                t_end: 2.0 * settings.t_end,
                ..*settings
            };
            match classify_stability(model, delta, &longer) {
                Err(Error::Inconclusive { .. }) => Ok(Stability::Oscillating),
                other => other,
            }
        }
        other => other,
    }
}

pub const DEFAULT_HOPF_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfReport {
    pub predicted: ModifiedCriticalDelay,
    /// Midpoint of the final bracket.
    pub empirical_delta: f64,
    pub final_bracket: (f64, f64),
    pub classification_margin: f64,
    pub probes: usize,
}

impl HopfReport {
    pub fn first_order_gap(&self) -> f64 {
        (self.empirical_delta - self.predicted.delta_mod_first_order).abs()
    }
}

/// Bisects on the delay until the stable/oscillating bracket is narrower than `tol`.
pub fn locate_hopf_empirically(
    model: &QueueModel,
    bracket: (f64, f64),
    tol: f64,
    settings: &StabilitySettings,
) -> Result<HopfReport> {
    let predicted = critical_delay_modified(model)?;
    let (mut lo, mut hi) = bracket;
    if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo < hi) {
        return Err(Error::InvalidParameter {
            name: "bracket",
            value: lo,
            reason: "need 0 <= lo < hi",
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "tolerance must be positive",
        });
    }
    let at_lo = classify_resolved(model, lo, settings)?;
    let at_hi = classify_resolved(model, hi, settings)?;
    let mut probes = 2;
    if at_lo == at_hi || at_lo == Stability::Oscillating {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            class: if at_lo == at_hi {
                at_lo.as_str()
            } else {
                "reversed (oscillating below, stable above)"
            },
        });
    }
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        probes += 1;
        match classify_resolved(model, mid, settings)? {
            Stability::Stable => lo = mid,
            Stability::Oscillating => hi = mid,
        }
    }
    Ok(HopfReport {
        predicted,
        empirical_delta: 0.5 * (lo + hi),
        final_bracket: (lo, hi),
        classification_margin: settings.margin,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ModelParams, Perturbation};

    fn symmetric() -> QueueModel {
        QueueModel::symmetric(ModelParams::new(10.0, 1.0, 1.0, 0.0).unwrap())
    }

    #[test]
    fn symmetric_phases() {
        let s = StabilitySettings::default();
        assert_eq!(classify_stability(&symmetric(), 0.25, &s).unwrap(), Stability::Stable);
        assert_eq!(
            classify_stability(&symmetric(), 0.4, &s).unwrap(),
            Stability::Oscillating
        );
    }

    #[test]
    fn undelayed_system_is_stable() {
        let s = StabilitySettings::default();
        assert_eq!(classify_stability(&symmetric(), 0.0, &s).unwrap(), Stability::Stable);
    }

    #[test]
    fn window_rules() {
        let w = |early, late| WindowAmplitudes { early, late };
        let c = |w: WindowAmplitudes| w.classify(0.02, 1e-9, 0.02);
        assert_eq!(c(w(1e-3, 1e-4)).unwrap(), Stability::Stable);
        assert_eq!(c(w(0.1, 0.2)).unwrap(), Stability::Oscillating);
        // Saturated limit cycle.
        assert_eq!(c(w(1.4, 1.4)).unwrap(), Stability::Oscillating);
        // Decayed to round-off.
        assert_eq!(c(w(1e-15, 1.1e-15)).unwrap(), Stability::Stable);
        assert!(matches!(c(w(0.02, 0.02)), Err(Error::Inconclusive { .. })));
    }

    #[test]
    fn invalid_bracket() {
        let s = StabilitySettings {
            t_end: 60.0,
            ..Default::default()
        };
        let err = locate_hopf_empirically(&symmetric(), (0.1, 0.2), 1e-2, &s).unwrap_err();
        assert!(matches!(err, Error::InvalidBracket { class: "stable", .. }));
        let err = locate_hopf_empirically(&symmetric(), (0.42, 0.3), 1e-2, &s).unwrap_err();
        assert!(matches!(err, Error::InvalidParameter { .. }));
    }

    #[test]
    fn bisection_stays_in_bracket_and_refines() {
        let model = QueueModel::new(
            ModelParams::new(10.0, 1.0, 1.0, 0.0).unwrap(),
            Perturbation::new(1.0, 0.0, 0.0, 0.0, 0.1),
        )
        .unwrap();
        let s = StabilitySettings::default();
        let coarse = locate_hopf_empirically(&model, (0.30, 0.42), 1e-2, &s).unwrap();
        let fine = locate_hopf_empirically(&model, (0.30, 0.42), 1e-3, &s).unwrap();
        for r in [&coarse, &fine] {
            assert!(r.empirical_delta > 0.30 && r.empirical_delta < 0.42);
        }
        assert!(fine.final_bracket.0 >= coarse.final_bracket.0);
        assert!(fine.final_bracket.1 <= coarse.final_bracket.1);
        assert!(fine.first_order_gap() < 5e-3);
    }
}

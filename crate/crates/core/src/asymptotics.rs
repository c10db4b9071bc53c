//! Closed-form asymptotic predictions for the weakly asymmetric system.
//!
//! Everything here is an explicit formula in the model parameters: the first-order
//! equilibrium shift, the critical delays at which the equilibrium loses stability,
//! and the Lindstedt estimate of the limit-cycle amplitude just past that delay.

use crate::error::{Error, Result};
use crate::model::{ModelParams, QueueModel, QueuePair};

/// First-order equilibrium shifts: `q* = lambda/(2 mu) + eps * (a, b) + O(eps^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumCoefficients {
    pub a: f64,
    pub b: f64,
}

/// Per-parameter derivatives of the equilibrium shift, ordered
/// `[lambda_hat, mu_hat, theta_hat, alpha_hat]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumSensitivities {
    pub a: [f64; 4],
    pub b: [f64; 4],
}

pub fn equilibrium_sensitivities(params: &ModelParams) -> EquilibriumSensitivities {
    let (l, m, th) = (params.lambda(), params.mu(), params.theta());
    let g = l * th + 2.0 * m;
    EquilibriumSensitivities {
        a: [
            (l * th + 4.0 * m) / (4.0 * m * g),
            -l * (l * th + 4.0 * m) / (4.0 * m * m * g),
            -l * l / (4.0 * m * g),
            l / (2.0 * g),
        ],
        b: [
            l * th / (4.0 * m * g),
            -l * l * th / (4.0 * m * m * g),
            l * l / (4.0 * m * g),
            -l / (2.0 * g),
        ],
    }
}

pub fn equilibrium_coefficients(model: &QueueModel) -> EquilibriumCoefficients {
    let s = equilibrium_sensitivities(model.params());
    let p = model.perturbation();
    let hats = [p.lambda_hat, p.mu_hat, p.theta_hat, p.alpha_hat];
    let dot = |w: &[f64; 4]| w.iter().zip(&hats).map(|(w, h)| w * h).sum::<f64>();
    EquilibriumCoefficients {
        a: dot(&s.a),
        b: dot(&s.b),
    }
}

/// First-order equilibrium of the perturbed system.
pub fn approx_equilibrium(model: &QueueModel) -> QueuePair {
    let c = equilibrium_coefficients(model);
    let base = model.params().symmetric_equilibrium();
    let eps = model.perturbation().epsilon;
    QueuePair::new(base + c.a * eps, base + c.b * eps)
}

/// Delay and angular frequency at which a characteristic root crosses the
/// imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalDelay {
    pub delta: f64,
    pub omega: f64,
}

/// Critical delay of the symmetric system; requires `lambda * theta > 2 mu`.
pub fn critical_delay_symmetric(params: &ModelParams) -> Result<CriticalDelay> {
    let lt = params.lambda() * params.theta();
    let mu = params.mu();
    if lt <= 2.0 * mu {
        return Err(Error::NoBifurcation {
            lambda_theta: lt,
            two_mu: 2.0 * mu,
        });
    }
    let omega = 0.5 * (lt * lt - 4.0 * (mu * mu)).sqrt();
    let delta = (-2.0 * mu / lt).acos() / omega;
    Ok(CriticalDelay { delta, omega })
}

/// Imaginary-axis crossing of `r + C exp(-r delta) + mu = 0`.
///
/// At `r = i omega`, `cos(omega delta) = -mu / C` and `sin(omega delta) = omega / C`.
pub fn characteristic_crossing(gain: f64, mu: f64) -> Result<CriticalDelay> {
    if !(gain.is_finite() && mu.is_finite()) || gain <= mu || gain <= 0.0 {
        return Err(Error::NoCrossing { gain, mu });
    }
    let omega = (gain * gain - mu * mu).sqrt();
    let delta = (-mu / gain).acos() / omega;
    Ok(CriticalDelay { delta, omega })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeltaModVariant {
    /// Symmetric critical delay plus the linear correction in epsilon.
    #[default]
    FirstOrder,
    /// Symmetric formula evaluated at the half-shifted parameters.
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModifiedCriticalDelay {
    pub symmetric: CriticalDelay,
    pub delta_mod_first_order: f64,
    pub delta_mod_closed_form: f64,
    /// Crossing frequency at the half-shifted parameters.
    pub omega_mod: f64,
    /// Second-order value, present only when `lambda_hat = mu_hat = theta_hat = 0`.
    pub delta_mod_alpha_second_order: Option<f64>,
}

impl ModifiedCriticalDelay {
    pub fn delta_mod(&self, variant: DeltaModVariant) -> f64 {
        match variant {
            DeltaModVariant::FirstOrder => self.delta_mod_first_order,
            DeltaModVariant::ClosedForm => self.delta_mod_closed_form,
        }
    }
}

/// `(lambda + eps lambda_hat / 2, mu + eps mu_hat / 2, theta + eps theta_hat / 2)`
fn half_shifted(model: &QueueModel) -> (f64, f64, f64) {
    let p = model.params();
    let h = model.perturbation();
    let e = h.epsilon;
    (
        p.lambda() + 0.5 * e * h.lambda_hat,
        p.mu() + 0.5 * e * h.mu_hat,
        p.theta() + 0.5 * e * h.theta_hat,
    )
}

pub fn critical_delay_modified(model: &QueueModel) -> Result<ModifiedCriticalDelay> {
    let params = model.params();
    let pert = model.perturbation();
    let symmetric = critical_delay_symmetric(params)?;

    let eps = pert.epsilon;
    let full_gain = (params.lambda() + eps * pert.lambda_hat) * (params.theta() + eps * pert.theta_hat);
    let full_mu = params.mu() + eps * pert.mu_hat;
    if full_gain <= 2.0 * full_mu {
        return Err(Error::NoBifurcation {
            lambda_theta: full_gain,
            two_mu: 2.0 * full_mu,
        });
    }

    let (l, m, th) = (params.lambda(), params.mu(), params.theta());
    let (d0, w0) = (symmetric.delta, symmetric.omega);
    let w2 = w0 * w0;
    let shared = m + d0 * (m * m + w2);
    let slope = shared / (2.0 * l * w2) * pert.lambda_hat - (1.0 + m * d0) / (2.0 * w2) * pert.mu_hat
        + shared / (2.0 * th * w2) * pert.theta_hat;
    let delta_mod_first_order = d0 - eps * slope;

    let (lb, mb, tb) = half_shifted(model);
    // Same crossing as the symmetric system with gain lambda_bar * theta_bar / 2.
    let closed = critical_delay_symmetric(&ModelParams::new(lb, mb, tb, params.alpha())?)?;

    let delta_mod_alpha_second_order = pert.is_alpha_only().then(|| {
        let g = l * th + 2.0 * m;
        let coeff = (4.0 * m.powi(3) + m * m * l * l * th * th * d0) / (4.0 * w2 * g * g);
        d0 + coeff * eps * eps * pert.alpha_hat * pert.alpha_hat
    });

    Ok(ModifiedCriticalDelay {
        symmetric,
        delta_mod_first_order,
        delta_mod_closed_form: closed.delta,
        omega_mod: closed.omega,
        delta_mod_alpha_second_order,
    })
}

/// Lindstedt amplitude prediction at a given delay.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudePrediction {
    /// Peak-to-peak width of the predicted limit cycle of each queue.
    pub amplitude_tilde: f64,
    /// The critical delay the offset `delta - delta_mod` is measured from.
    pub delta_mod: f64,
    /// First-order frequency correction; undefined when `epsilon = 0`.
    /// Diagnostic only.
    pub omega_correction: Option<f64>,
    /// `omega_mod + eps * omega_1`.
    pub predicted_frequency: f64,
}

/// The factor multiplying `sqrt(delta - delta_mod)` in the amplitude estimate.
pub fn amplitude_coefficient(model: &QueueModel) -> Result<f64> {
    let params = model.params();
    let (l, m, th) = (params.lambda(), params.mu(), params.theta());
    if l * th <= 2.0 * m {
        return Err(Error::NoBifurcation {
            lambda_theta: l * th,
            two_mu: 2.0 * m,
        });
    }
    let (lb, mb, tb) = half_shifted(model);
    let lt_bar = lb * tb;
    let disc = lt_bar * lt_bar - 4.0 * mb * mb;
    if disc <= 0.0 {
        return Err(Error::NoBifurcation {
            lambda_theta: lt_bar,
            two_mu: 2.0 * mb,
        });
    }
    let th2 = th * th;
    // The (theta - 1) factor is transcribed as published; it vanishes at theta = 1.
    let bracket = l * th2 * lt_bar + 4.0 * l * th2 / lt_bar * mb * mb * (th - 1.0);
    let denominator = 2.0 * lb * lb * mb * th2 * tb * tb - 8.0 * mb.powi(3) * th2
        + bracket * disc.sqrt() * (-2.0 * mb / lt_bar).acos();
    if !(denominator > 0.0) {
        return Err(Error::InvalidRegime { denominator });
    }
    Ok((8.0 * disc * disc / denominator).sqrt())
}

/// Amplitude prediction with the offset measured from the first-order critical delay.
pub fn lindstedt_amplitude(model: &QueueModel, delta: f64) -> Result<AmplitudePrediction> {
    lindstedt_amplitude_with(model, delta, DeltaModVariant::FirstOrder)
}

pub fn lindstedt_amplitude_with(
    model: &QueueModel,
    delta: f64,
    variant: DeltaModVariant,
) -> Result<AmplitudePrediction> {
    let crit = critical_delay_modified(model)?;
    let delta_mod = crit.delta_mod(variant);
    if !(delta >= delta_mod) {
        return Err(Error::NoLimitCycle { delta, delta_mod });
    }
    let coefficient = amplitude_coefficient(model)?;
    let amplitude_tilde = (delta - delta_mod).sqrt() * coefficient;

    let (w0, d0) = (crit.omega_mod, delta_mod);
    let theta = model.params().theta();
    let phase = w0 * d0;
    // eps * omega_1, with eps * A^2 = Atilde^2 and eps * Delta_1 = delta - delta_mod.
    let shift = -(w0 * (delta - d0)
        + amplitude_tilde * amplitude_tilde * theta * theta * phase.cos() / (16.0 * phase.sin()))
        / d0;
    let eps = model.perturbation().epsilon;
    Ok(AmplitudePrediction {
        amplitude_tilde,
        delta_mod,
        omega_correction: (eps > 0.0).then(|| shift / eps),
        predicted_frequency: w0 + shift,
    })
}

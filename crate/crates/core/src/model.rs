//! Parameters, state and right-hand side of the asymmetric two-queue fluid model.
//!
//! Customers arrive at total rate `lambda` and pick a queue with multinomial-logit
//! probabilities computed from queue lengths observed `delta` time units ago. Each
//! queue is an infinite-server fluid queue draining at rate `mu` per customer. The
//! first queue's parameters are shifted by `epsilon` times the hat parameters.

use crate::error::{Error, Result};

/// Symmetric base parameters shared by both queues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    lambda: f64,
    mu: f64,
    theta: f64,
    alpha: f64,
}

impl ModelParams {
    pub fn new(lambda: f64, mu: f64, theta: f64, alpha: f64) -> Result<Self> {
        check_finite("lambda", lambda)?;
        check_finite("mu", mu)?;
        check_finite("theta", theta)?;
        check_finite("alpha", alpha)?;
        if lambda <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "arrival rate must be positive",
            });
        }
        if mu <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu,
                reason: "service rate must be positive",
            });
        }
        if theta < 0.0 {
            return Err(Error::InvalidParameter {
                name: "theta",
                value: theta,
                reason: "queue-length sensitivity must be non-negative",
            });
        }
        Ok(Self {
            lambda,
            mu,
            theta,
            alpha,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Equilibrium of the unperturbed system, `lambda / (2 mu)` for each queue.
    pub fn symmetric_equilibrium(&self) -> f64 {
        self.lambda / (2.0 * self.mu)
    }
}

/// Perturbation applied to the first queue: each base parameter `x` becomes
/// `x + epsilon * x_hat`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Perturbation {
    pub lambda_hat: f64,
    pub mu_hat: f64,
    pub theta_hat: f64,
    pub alpha_hat: f64,
    pub epsilon: f64,
}

impl Perturbation {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn new(lambda_hat: f64, mu_hat: f64, theta_hat: f64, alpha_hat: f64, epsilon: f64) -> Self {
        Self {
            lambda_hat,
            mu_hat,
            theta_hat,
            alpha_hat,
            epsilon,
        }
    }

    /// True when only `alpha_hat` may be non-zero.
    pub fn is_alpha_only(&self) -> bool {
        self.lambda_hat == 0.0 && self.mu_hat == 0.0 && self.theta_hat == 0.0
    }

    pub fn is_zero(&self) -> bool {
        self.is_alpha_only() && self.alpha_hat == 0.0
    }
}

/// Queue lengths of the two queues. Fluid quantities: negative values are
/// not rejected.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QueuePair {
    pub q1: f64,
    pub q2: f64,
}

impl QueuePair {
    pub const fn new(q1: f64, q2: f64) -> Self {
        Self { q1, q2 }
    }

    pub fn splat(q: f64) -> Self {
        Self { q1: q, q2: q }
    }

    pub fn is_finite(&self) -> bool {
        self.q1.is_finite() && self.q2.is_finite()
    }

    pub fn swapped(&self) -> Self {
        Self {
            q1: self.q2,
            q2: self.q1,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.q1.abs().max(self.q2.abs())
    }

    /// `self + scale * other`
    pub fn axpy(&self, scale: f64, other: &QueuePair) -> Self {
        Self {
            q1: self.q1 + scale * other.q1,
            q2: self.q2 + scale * other.q2,
        }
    }
}

/// A validated combination of base parameters and perturbation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueueModel {
    params: ModelParams,
    pert: Perturbation,
    // Effective parameters of the first queue.
    lambda1: f64,
    mu1: f64,
    theta1: f64,
    alpha1: f64,
}

impl QueueModel {
    pub fn new(params: ModelParams, pert: Perturbation) -> Result<Self> {
        check_finite("lambda_hat", pert.lambda_hat)?;
        check_finite("mu_hat", pert.mu_hat)?;
        check_finite("theta_hat", pert.theta_hat)?;
        check_finite("alpha_hat", pert.alpha_hat)?;
        check_finite("epsilon", pert.epsilon)?;
        if pert.epsilon < 0.0 {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: pert.epsilon,
                reason: "perturbation scale must be non-negative",
            });
        }
        let eps = pert.epsilon;
        let lambda1 = params.lambda + eps * pert.lambda_hat;
        let mu1 = params.mu + eps * pert.mu_hat;
        let theta1 = params.theta + eps * pert.theta_hat;
        let alpha1 = params.alpha + eps * pert.alpha_hat;
        if lambda1 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda_hat",
                value: pert.lambda_hat,
                reason: "perturbed arrival rate must stay positive",
            });
        }
        if mu1 <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "mu_hat",
                value: pert.mu_hat,
                reason: "perturbed service rate must stay positive",
            });
        }
        if theta1 < 0.0 {
            return Err(Error::InvalidParameter {
                name: "theta_hat",
                value: pert.theta_hat,
                reason: "perturbed sensitivity must stay non-negative",
            });
        }
        Ok(Self {
            params,
            pert,
            lambda1,
            mu1,
            theta1,
            alpha1,
        })
    }

    /// The unperturbed model.
    pub fn symmetric(params: ModelParams) -> Self {
        Self::new(params, Perturbation::none()).expect("zero perturbation is always admissible")
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn perturbation(&self) -> &Perturbation {
        &self.pert
    }

    /// Multinomial-logit probabilities of joining each queue given the delayed
    /// queue lengths.
    pub fn choice_probabilities(&self, delayed: QueuePair) -> Result<(f64, f64)> {
        if !delayed.is_finite() {
            return Err(Error::NonFinite("delayed queue lengths"));
        }
        Ok(self.mnl(delayed))
    }

    /// Time derivative of both queue lengths.
    pub fn rhs(&self, current: QueuePair, delayed: QueuePair) -> Result<QueuePair> {
        if !current.is_finite() {
            return Err(Error::NonFinite("current queue lengths"));
        }
        let (p1, p2) = self.choice_probabilities(delayed)?;
        Ok(self.drift(current, p1, p2))
    }

    /// Unchecked RHS used by the integrator, which validates state itself.
    #[inline]
    pub(crate) fn rhs_raw(&self, current: QueuePair, delayed: QueuePair) -> QueuePair {
        let (p1, p2) = self.mnl(delayed);
        self.drift(current, p1, p2)
    }

    #[inline]
    fn drift(&self, current: QueuePair, p1: f64, p2: f64) -> QueuePair {
        QueuePair {
            q1: self.lambda1 * p1 - self.mu1 * current.q1,
            q2: self.params.lambda * p2 - self.params.mu * current.q2,
        }
    }

    #[inline]
    fn mnl(&self, delayed: QueuePair) -> (f64, f64) {
        let x1 = -self.theta1 * delayed.q1 + self.alpha1;
        let x2 = -self.params.theta * delayed.q2 + self.params.alpha;
        // Shift by the larger exponent so neither exp overflows.
        let m = x1.max(x2);
        let e1 = (x1 - m).exp();
        let e2 = (x2 - m).exp();
        let total = e1 + e2;
        (e1 / total, e2 / total)
    }
}

fn check_finite(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn base() -> ModelParams {
        ModelParams::new(10.0, 1.0, 1.0, 0.0).unwrap()
    }

    #[test]
    fn equal_delayed_lengths_split_evenly() {
        let model = QueueModel::symmetric(base());
        let (p1, p2) = model.choice_probabilities(QueuePair::splat(5.0)).unwrap();
        assert_eq!(p1, 0.5);
        assert_eq!(p2, 0.5);
    }

    #[test]
    fn log_three_gap_gives_three_to_one_odds() {
        let model = QueueModel::symmetric(base());
        let (p1, p2) = model
            .choice_probabilities(QueuePair::new(5.0, 5.0 + 3f64.ln()))
            .unwrap();
        assert_abs_diff_eq!(p1, 0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(p2, 0.25, epsilon = 1e-14);
    }

    #[test]
    fn theta_perturbation_probability() {
        // Exponents -5.5 and -5: p1 = 1 / (1 + e^{0.5}).
        let pert = Perturbation::new(0.0, 0.0, 1.0, 0.0, 0.1);
        let model = QueueModel::new(base(), pert).unwrap();
        let (p1, _) = model.choice_probabilities(QueuePair::splat(5.0)).unwrap();
        assert_abs_diff_eq!(p1, 1.0 / (1.0 + 0.5f64.exp()), epsilon = 1e-15);
        assert_abs_diff_eq!(p1, 0.377541, epsilon = 1e-6);
    }

    #[test]
    fn rhs_examples() {
        let model = QueueModel::symmetric(base());
        let eq = QueuePair::splat(5.0);
        assert_eq!(model.rhs(eq, eq).unwrap(), QueuePair::new(0.0, 0.0));
        assert_eq!(
            model.rhs(QueuePair::new(0.0, 0.0), eq).unwrap(),
            QueuePair::new(5.0, 5.0)
        );

        let pert = Perturbation::new(1.0, 0.0, 0.0, 0.0, 0.1);
        let model = QueueModel::new(base(), pert).unwrap();
        let d = model.rhs(eq, eq).unwrap();
        assert_abs_diff_eq!(d.q1, 10.1 * 0.5 - 5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.q1, 0.05, epsilon = 1e-12);
        assert_eq!(d.q2, 0.0);
    }

    #[test]
    fn huge_exponents_do_not_overflow() {
        let params = ModelParams::new(10.0, 1.0, 100.0, 0.0).unwrap();
        let model = QueueModel::symmetric(params);
        let (p1, p2) = model
            .choice_probabilities(QueuePair::new(-20.0, 20.0))
            .unwrap();
        assert!(p1.is_finite() && p2.is_finite());
        assert_eq!(p1 + p2, 1.0);
        assert!(p1 > 0.99);
    }

    #[test]
    fn zero_sensitivity_decouples() {
        let params = ModelParams::new(10.0, 1.0, 0.0, 0.0).unwrap();
        let model = QueueModel::symmetric(params);
        let (p1, p2) = model
            .choice_probabilities(QueuePair::new(1.0, 100.0))
            .unwrap();
        assert_eq!((p1, p2), (0.5, 0.5));
    }

    #[test]
    fn non_finite_input_is_rejected() {
        let model = QueueModel::symmetric(base());
        assert!(matches!(
            model.choice_probabilities(QueuePair::new(f64::NAN, 1.0)),
            Err(Error::NonFinite(_))
        ));
        assert!(matches!(
            model.rhs(QueuePair::new(f64::INFINITY, 1.0), QueuePair::splat(1.0)),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn parameter_validation() {
        assert!(ModelParams::new(0.0, 1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, -1.0, 1.0, 0.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, -0.1, 0.0).is_err());
        assert!(ModelParams::new(1.0, 1.0, 0.0, 0.0).is_ok());

        let too_big = Perturbation::new(-200.0, 0.0, 0.0, 0.0, 0.1);
        assert!(QueueModel::new(base(), too_big).is_err());
        let negative_eps = Perturbation::new(0.0, 0.0, 0.0, 0.0, -0.1);
        assert!(QueueModel::new(base(), negative_eps).is_err());
        let theta_flip = Perturbation::new(0.0, 0.0, -20.0, 0.0, 0.1);
        assert!(QueueModel::new(base(), theta_flip).is_err());
    }
}

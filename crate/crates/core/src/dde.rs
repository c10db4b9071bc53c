//! Fixed-step integration of the two-queue delay equation by the method of steps.
//!
//! The step is `h = delta / n`, so the delayed argument of every RK4 stage falls on a
//! grid node (`t - delta`, `t + h - delta`) or exactly halfway between two nodes. The
//! midpoint is filled in by cubic Hermite interpolation from the stored node values and
//! derivatives, which keeps the scheme fourth order without general dense output.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::model::{QueuePair, QueueModel};

/// States whose magnitude exceeds this are treated as divergence.
pub const DIVERGENCE_BOUND: f64 = 1e9;

pub const DEFAULT_STEPS_PER_DELAY: usize = 200;
pub const DEFAULT_EQUILIBRIUM_HORIZON: f64 = 100.0;
pub const DEFAULT_AMPLITUDE_HORIZON: f64 = 300.0;

/// Constant initial function on `[-delta, 0]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistorySpec {
    pub q1_init: f64,
    pub q2_init: f64,
}

impl HistorySpec {
    pub fn new(q1_init: f64, q2_init: f64) -> Result<Self> {
        if !(q1_init.is_finite() && q2_init.is_finite()) {
            return Err(Error::NonFinite("initial history"));
        }
        Ok(Self { q1_init, q2_init })
    }

    /// The history used in every figure: `q1 = 4.99`, `q2 = 5.01`.
    pub fn figure_default() -> Self {
        Self {
            q1_init: 4.99,
            q2_init: 5.01,
        }
    }

    /// `q1 = eq.q1 - offset`, `q2 = eq.q2 + offset`.
    pub fn offset_from(eq: QueuePair, offset: f64) -> Self {
        Self {
            q1_init: eq.q1 - offset,
            q2_init: eq.q2 + offset,
        }
    }

    pub fn state(&self) -> QueuePair {
        QueuePair::new(self.q1_init, self.q2_init)
    }

    pub fn swapped(&self) -> Self {
        Self {
            q1_init: self.q2_init,
            q2_init: self.q1_init,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationConfig {
    delta: f64,
    t_end: f64,
    steps_per_delay: usize,
}

impl IntegrationConfig {
    pub fn new(delta: f64, t_end: f64, steps_per_delay: usize) -> Result<Self> {
        if !(delta.is_finite() && delta > 0.0) {
            return Err(Error::InvalidParameter {
                name: "delta",
                value: delta,
                reason: "delay must be positive",
            });
        }
        if !(t_end.is_finite() && t_end > delta) {
            return Err(Error::InvalidParameter {
                name: "t_end",
                value: t_end,
                reason: "horizon must exceed the delay",
            });
        }
        if steps_per_delay == 0 {
            return Err(Error::InvalidParameter {
                name: "steps_per_delay",
                value: 0.0,
                reason: "need at least one step per delay",
            });
        }
        Ok(Self {
            delta,
            t_end,
            steps_per_delay,
        })
    }

    pub fn with_defaults(delta: f64, t_end: f64) -> Result<Self> {
        Self::new(delta, t_end, DEFAULT_STEPS_PER_DELAY)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn steps_per_delay(&self) -> usize {
        self.steps_per_delay
    }

    pub fn step(&self) -> f64 {
        self.delta / self.steps_per_delay as f64
    }
}

/// Queue lengths sampled on the uniform grid `t_k = k h`, `k = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    step: f64,
    times: Vec<f64>,
    q1: Vec<f64>,
    q2: Vec<f64>,
}

impl Trajectory {
    fn from_states(step: f64, states: &[QueuePair]) -> Self {
        Self {
            step,
            times: (0..states.len()).map(|k| k as f64 * step).collect(),
            q1: states.iter().map(|s| s.q1).collect(),
            q2: states.iter().map(|s| s.q2).collect(),
        }
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn q1(&self) -> &[f64] {
        &self.q1
    }

    pub fn q2(&self) -> &[f64] {
        &self.q2
    }

    pub fn state(&self, index: usize) -> QueuePair {
        QueuePair::new(self.q1[index], self.q2[index])
    }

    pub fn last(&self) -> QueuePair {
        self.state(self.len() - 1)
    }

    pub fn t_end(&self) -> f64 {
        self.times.last().copied().unwrap_or(0.0)
    }

    /// First grid index with `t >= time`.
    pub fn index_at(&self, time: f64) -> usize {
        self.times.partition_point(|&t| t < time)
    }

    /// Writes `t,q1,q2` rows with shortest round-trip formatting.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "t,q1,q2")?;
        for ((t, a), b) in self.times.iter().zip(&self.q1).zip(&self.q2) {
            writeln!(out, "{t},{a},{b}")?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::with_capacity(self.len() * 48);
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

/// Integrates the delay equation from a constant history over `[0, t_end]`.
///
/// The last grid point is the first node at or beyond `t_end`.
pub fn integrate(
    model: &QueueModel,
    history: &HistorySpec,
    config: &IntegrationConfig,
) -> Result<Trajectory> {
    let n = config.steps_per_delay;
    let h = config.step();
    let steps = grid_steps(config.t_end, h);
    let hist = history.state();
    if !hist.is_finite() {
        return Err(Error::NonFinite("initial history"));
    }

    let mut q: Vec<QueuePair> = Vec::with_capacity(steps + 1);
    // f[k] is the right derivative at node k, used by the Hermite interpolant.
    let mut f: Vec<QueuePair> = Vec::with_capacity(steps + 1);
    q.push(hist);
    f.push(model.rhs_raw(hist, hist));

    for k in 0..steps {
        // Delayed stage times t_k - delta and t_{k+1} - delta are nodes k-n and k-n+1.
        // Stage 1 uses f[k], which already holds the delayed value at node k-n.
        let (ym, yb) = if k < n {
            (hist, hist)
        } else {
            let j = k - n;
            let (ya, fa, yb, fb) = (q[j], f[j], q[j + 1], f[j + 1]);
            let ym = QueuePair::new(
                0.5 * (ya.q1 + yb.q1) + h / 8.0 * (fa.q1 - fb.q1),
                0.5 * (ya.q2 + yb.q2) + h / 8.0 * (fa.q2 - fb.q2),
            );
            (ym, yb)
        };

        let y = q[k];
        let k1 = f[k];
        let k2 = model.rhs_raw(y.axpy(0.5 * h, &k1), ym);
        let k3 = model.rhs_raw(y.axpy(0.5 * h, &k2), ym);
        let k4 = model.rhs_raw(y.axpy(h, &k3), yb);
        let next = QueuePair::new(
            y.q1 + h / 6.0 * (k1.q1 + 2.0 * k2.q1 + 2.0 * k3.q1 + k4.q1),
            y.q2 + h / 6.0 * (k1.q2 + 2.0 * k2.q2 + 2.0 * k3.q2 + k4.q2),
        );
        if !next.is_finite() || next.max_abs() > DIVERGENCE_BOUND {
            return Err(Error::Diverged {
                last_valid_time: k as f64 * h,
            });
        }
        let delayed = if k < n { hist } else { q[k + 1 - n] };
        q.push(next);
        f.push(model.rhs_raw(next, delayed));
    }

    Ok(Trajectory::from_states(h, &q))
}

/// Classic RK4 for the undelayed system (`delta = 0`), where the choice model
/// sees the current queue lengths.
pub fn integrate_undelayed(
    model: &QueueModel,
    history: &HistorySpec,
    step: f64,
    t_end: f64,
) -> Result<Trajectory> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidParameter {
            name: "step",
            value: step,
            reason: "step must be positive",
        });
    }
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::InvalidParameter {
            name: "t_end",
            value: t_end,
            reason: "horizon must be positive",
        });
    }
    let steps = grid_steps(t_end, step);
    let f = |y: QueuePair| model.rhs_raw(y, y);
    let mut q = Vec::with_capacity(steps + 1);
    q.push(history.state());
    for k in 0..steps {
        let y = q[k];
        let k1 = f(y);
        let k2 = f(y.axpy(0.5 * step, &k1));
        let k3 = f(y.axpy(0.5 * step, &k2));
        let k4 = f(y.axpy(step, &k3));
        let next = QueuePair::new(
            y.q1 + step / 6.0 * (k1.q1 + 2.0 * k2.q1 + 2.0 * k3.q1 + k4.q1),
            y.q2 + step / 6.0 * (k1.q2 + 2.0 * k2.q2 + 2.0 * k3.q2 + k4.q2),
        );
        if !next.is_finite() || next.max_abs() > DIVERGENCE_BOUND {
            return Err(Error::Diverged {
                last_valid_time: k as f64 * step,
            });
        }
        q.push(next);
    }
    Ok(Trajectory::from_states(step, &q))
}

fn grid_steps(t_end: f64, h: f64) -> usize {
    // Tolerate representation error when t_end is an exact multiple of h.
    ((t_end / h) - 1e-9).ceil().max(1.0) as usize
}

/// Self-convergence study of [`integrate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    /// Terminal-state errors at n, 2n and 4n steps per delay against a 16n reference.
    pub errors: [f64; 3],
    /// `log2(e_n / e_2n)` and `log2(e_2n / e_4n)`.
    pub pairwise_orders: [f64; 2],
    /// The finer of the two pairwise orders.
    pub observed_order: f64,
}

/// Runs the integrator at `n`, `2n`, `4n` and `16n` steps per delay and estimates
/// the order from terminal-state errors against the finest run.
pub fn convergence_order(
    model: &QueueModel,
    history: &HistorySpec,
    delta: f64,
    t_end: f64,
    n: usize,
) -> Result<ConvergenceStudy> {
    let coarse = IntegrationConfig::new(delta, t_end, n)?;
    let coarse_steps = grid_steps(t_end, coarse.step());
    // Align every run on the coarse grid's final node.
    let horizon = coarse_steps as f64 * coarse.step();
    let terminal = |m: usize| -> Result<QueuePair> {
        let cfg = IntegrationConfig::new(delta, horizon, n * m)?;
        let traj = integrate(model, history, &cfg)?;
        Ok(traj.state(coarse_steps * m))
    };
    let reference = terminal(16)?;
    let mut errors = [0.0; 3];
    for (slot, m) in errors.iter_mut().zip([1, 2, 4]) {
        let s = terminal(m)?;
        *slot = (s.q1 - reference.q1).abs().max((s.q2 - reference.q2).abs());
    }
    let pairwise_orders = [
        (errors[0] / errors[1]).log2(),
        (errors[1] / errors[2]).log2(),
    ];
    Ok(ConvergenceStudy {
        errors,
        pairwise_orders,
        observed_order: pairwise_orders[1],
    })
}

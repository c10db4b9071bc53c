//! Flat `key = value` run configuration.
//!
//! ```text
//! # arrival-rate perturbation on queue 1
//! lambda = 10
//! lambda_hat = 1
//! epsilon = 0.1
//! ```

use std::fmt::Write as _;
use std::path::Path;

use asymq_core::dde::HistorySpec;
use asymq_core::{ModelParams, Perturbation, QueueModel};

use crate::error::{CliError, Result};

/// Raw settings before validation. Unset optional values fall back to
/// per-command defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub lambda: f64,
    pub mu: f64,
    pub theta: f64,
    pub alpha: f64,
    pub lambda_hat: f64,
    pub mu_hat: f64,
    pub theta_hat: f64,
    pub alpha_hat: f64,
    pub epsilon: f64,
    pub delta: Option<f64>,
    pub q1_init: f64,
    pub q2_init: f64,
    pub t_end: Option<f64>,
    pub steps_per_delay: Option<usize>,
}

impl Default for Settings {
    fn default() -> Self {
        let h = HistorySpec::figure_default();
        Self {
            lambda: 10.0,
            mu: 1.0,
            theta: 1.0,
            alpha: 0.0,
            lambda_hat: 0.0,
            mu_hat: 0.0,
            theta_hat: 0.0,
            alpha_hat: 0.0,
            epsilon: 0.1,
            delta: None,
            q1_init: h.q1_init,
            q2_init: h.q2_init,
            t_end: None,
            steps_per_delay: None,
        }
    }
}

impl Settings {
    /// Sets one key from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        if key == "steps_per_delay" {
            let n = value
                .parse::<usize>()
                .map_err(|_| format!("`{value}` is not a non-negative integer"))?;
            self.steps_per_delay = Some(n);
            return Ok(());
        }
        let x = value
            .parse::<f64>()
            .map_err(|_| format!("`{value}` is not a number"))?;
        match key {
            "lambda" => self.lambda = x,
            "mu" => self.mu = x,
            "theta" => self.theta = x,
            "alpha" => self.alpha = x,
            "lambda_hat" => self.lambda_hat = x,
            "mu_hat" => self.mu_hat = x,
            "theta_hat" => self.theta_hat = x,
            "alpha_hat" => self.alpha_hat = x,
            "epsilon" => self.epsilon = x,
            "delta" => self.delta = Some(x),
            "q1_init" => self.q1_init = x,
            "q2_init" => self.q2_init = x,
            "t_end" => self.t_end = Some(x),
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut s = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| CliError::Config {
                path: origin.to_string(),
                line: i + 1,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err("expected `key = value`".into()))?;
            s.set(key.trim(), value.trim()).map_err(err)?;
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Serialises every set key with round-trip precision.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("lambda", self.lambda.to_string());
        put("mu", self.mu.to_string());
        put("theta", self.theta.to_string());
        put("alpha", self.alpha.to_string());
        put("lambda_hat", self.lambda_hat.to_string());
        put("mu_hat", self.mu_hat.to_string());
        put("theta_hat", self.theta_hat.to_string());
        put("alpha_hat", self.alpha_hat.to_string());
        put("epsilon", self.epsilon.to_string());
        if let Some(d) = self.delta {
            put("delta", d.to_string());
        }
        put("q1_init", self.q1_init.to_string());
        put("q2_init", self.q2_init.to_string());
        if let Some(t) = self.t_end {
            put("t_end", t.to_string());
        }
        if let Some(n) = self.steps_per_delay {
            put("steps_per_delay", n.to_string());
        }
        out
    }
}

/// Validated configuration for a single run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: QueueModel,
    pub delta: Option<f64>,
    pub history: HistorySpec,
    pub t_end: Option<f64>,
    pub steps_per_delay: Option<usize>,
}

impl RunConfig {
    pub fn from_settings(s: &Settings) -> Result<Self> {
        let params = ModelParams::new(s.lambda, s.mu, s.theta, s.alpha)?;
        let pert = Perturbation::new(s.lambda_hat, s.mu_hat, s.theta_hat, s.alpha_hat, s.epsilon);
        Ok(Self {
            model: QueueModel::new(params, pert)?,
            delta: s.delta,
            history: HistorySpec::new(s.q1_init, s.q2_init)?,
            t_end: s.t_end,
            steps_per_delay: s.steps_per_delay,
        })
    }

    pub fn require_delta(&self) -> Result<f64> {
        self.delta
            .ok_or_else(|| CliError::Usage("this command needs a delay: pass --delta or set `delta`".into()))
    }
}

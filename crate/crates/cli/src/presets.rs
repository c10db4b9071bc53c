//! Built-in parameter sets for the reference tables and figures.

use asymq_core::analysis::HatName;
use asymq_core::{ModelParams, Perturbation, QueueModel, Result};

pub const EPSILON: f64 = 0.1;

fn params(alpha: f64) -> ModelParams {
    ModelParams::new(10.0, 1.0, 1.0, alpha).expect("preset parameters are valid")
}

fn model(alpha: f64, hats: [f64; 4]) -> QueueModel {
    QueueModel::new(
        params(alpha),
        Perturbation::new(hats[0], hats[1], hats[2], hats[3], EPSILON),
    )
    .expect("preset perturbations are admissible")
}

/// Perturbations `(lambda_hat, mu_hat, theta_hat, alpha_hat)` of the five
/// equilibrium-table rows.
pub const TABLE1_HATS: [[f64; 4]; 5] = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, 0.1, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
    [1.0, 0.1, 1.0, 1.0],
];

pub fn table1_models() -> Vec<QueueModel> {
    TABLE1_HATS.iter().map(|h| model(0.0, *h)).collect()
}

/// The swept parameter, its values, and the symmetric base for the sweep tables.
pub fn sweep(name: u8) -> (ModelParams, HatName, Vec<f64>, Perturbation) {
    let fixed = Perturbation::new(0.0, 0.0, 0.0, 0.0, EPSILON);
    match name {
        2 => (params(0.0), HatName::Lambda, (0..9).map(|i| 1.0 + 0.5 * i as f64).collect(), fixed),
        _ => (
            params(0.0),
            HatName::Mu,
            (0..9).map(|i| (10.0 + 5.0 * i as f64) / 100.0).collect(),
            fixed,
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PanelDelay {
    Fixed(f64),
    /// Offset from the first-order critical delay.
    FromCritical(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    /// Plain trajectories.
    Trajectory,
    /// Trajectories with the predicted limit-cycle band.
    Amplitude,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure {
    pub number: u8,
    pub description: &'static str,
    pub model: QueueModel,
    pub kind: FigureKind,
    pub panels: [(&'static str, PanelDelay); 2],
    pub t_end: f64,
}

const CASES: [(&str, [f64; 4]); 6] = [
    ("symmetric", [0.0, 0.0, 0.0, 0.0]),
    ("lambda_hat = 1", [1.0, 0.0, 0.0, 0.0]),
    ("mu_hat = 1", [0.0, 1.0, 0.0, 0.0]),
    ("theta_hat = 1", [0.0, 0.0, 1.0, 0.0]),
    ("alpha_hat = 1", [0.0, 0.0, 0.0, 1.0]),
    ("", [1.0, 1.0, 1.0, 1.0]),
];

/// Figure definitions by number, `1..=14`.
pub fn figure(number: u8) -> Option<Figure> {
    let fig = match number {
        1..=6 => {
            let (mut description, mut hats) = CASES[usize::from(number - 1)];
            if number == 6 {
                description = "mu_hat = 0.1, other hats = 1";
                hats = [1.0, 0.1, 1.0, 1.0];
            }
            Figure {
                number,
                description,
                model: model(0.0, hats),
                kind: FigureKind::Trajectory,
                panels: [("left", PanelDelay::Fixed(0.25)), ("right", PanelDelay::Fixed(0.4))],
                t_end: 100.0,
            }
        }
        7..=12 => {
            let (mut description, hats) = CASES[usize::from(number - 7)];
            if number == 12 {
                description = "all hats = 1";
            }
            Figure {
                number,
                description,
                model: model(0.0, hats),
                kind: FigureKind::Trajectory,
                panels: [
                    ("left", PanelDelay::FromCritical(-0.05)),
                    ("right", PanelDelay::FromCritical(0.05)),
                ],
                t_end: 100.0,
            }
        }
        13 | 14 => {
            let offsets = if number == 13 { (0.05, 0.1) } else { (0.15, 0.2) };
            Figure {
                number,
                description: "all hats = 1, alpha = 1",
                model: model(1.0, [1.0; 4]),
                kind: FigureKind::Amplitude,
                panels: [
                    ("left", PanelDelay::FromCritical(offsets.0)),
                    ("right", PanelDelay::FromCritical(offsets.1)),
                ],
                t_end: 300.0,
            }
        }
        _ => return None,
    };
    Some(fig)
}

impl PanelDelay {
    pub fn resolve(self, model: &QueueModel) -> Result<f64> {
        match self {
            PanelDelay::Fixed(d) => Ok(d),
            PanelDelay::FromCritical(off) => {
                let crit = asymq_core::asymptotics::critical_delay_modified(model)?;
                Ok(crit.delta_mod_first_order + off)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_figure_defined() {
        for n in 1..=14 {
            let f = figure(n).unwrap();
            assert_eq!(f.number, n);
            for (_, d) in f.panels {
                let delta = d.resolve(&f.model).unwrap();
                assert!(delta > 0.2 && delta < 0.6, "figure {n}: {delta}");
            }
        }
        assert!(figure(0).is_none() && figure(15).is_none());
    }

    #[test]
    fn sweep_values() {
        let (_, hat, values, _) = sweep(2);
        assert_eq!(hat, HatName::Lambda);
        assert_eq!(values, vec![1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0]);
        let (_, hat, values, _) = sweep(3);
        assert_eq!(hat, HatName::Mu);
        assert_eq!(values[0], 0.1);
        assert_eq!(values[8], 0.5);
        assert_eq!(values[5], 0.35);
    }

    #[test]
    fn mu_figures_use_full_hat() {
        assert_eq!(figure(3).unwrap().model.perturbation().mu_hat, 1.0);
        assert_eq!(figure(6).unwrap().model.perturbation().mu_hat, 0.1);
        assert_eq!(figure(13).unwrap().model.params().alpha(), 1.0);
    }
}

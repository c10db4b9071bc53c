//! End-to-end reproduction checks against the published tables and captions.
//! Prints one PASS/FAIL line per check and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use asymq_core::analysis::{
    classify_stability, epsilon_sweep, equilibrium_report, locate_hopf_empirically,
    measure_amplitude, HatName, Stability, StabilitySettings,
};
use asymq_core::asymptotics::{
    critical_delay_modified, critical_delay_symmetric, equilibrium_sensitivities,
    lindstedt_amplitude,
};
use asymq_core::dde::{convergence_order, integrate, HistorySpec, IntegrationConfig};
use asymq_core::{ModelParams, Perturbation, QueueModel, QueuePair};
use asymq_reproduction::{FIGURE_CASES, MEASURED, OFFSETS, PREDICTED, TABLE1, TABLE2, TABLE3};

/// Slack for decimal literals sitting exactly on a tolerance boundary.
const REPR: f64 = 1e-12;

fn base(alpha: f64) -> ModelParams {
    ModelParams::new(10.0, 1.0, 1.0, alpha).unwrap()
}

fn model(h: [f64; 4], eps: f64) -> QueueModel {
    QueueModel::new(base(0.0), Perturbation::new(h[0], h[1], h[2], h[3], eps)).unwrap()
}

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self { pass: true, detail: String::new(), notes: Vec::new() }
    }

    fn note(&mut self, text: String) {
        self.notes.push(text);
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.pass = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str(&what());
        }
    }

    fn near(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        self.check((got - want).abs() <= tol + REPR, || {
            format!("{label}: got {got:.6}, want {want} (tol {tol:e})")
        });
    }

    fn runtime(&mut self, elapsed: Duration, limit: Duration) {
        self.check(elapsed <= limit, || format!("runtime {elapsed:?} over {limit:?}"));
    }
}

fn table_one() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    for (i, (hats, want)) in TABLE1.iter().enumerate() {
        let r = equilibrium_report(&model(*hats, 0.1)).unwrap();
        let row = i + 1;
        o.near(&format!("row {row} q1_hat"), r.approx.q1, want[0], 5e-5);
        o.near(&format!("row {row} q1"), r.exact.q1, want[1], 1e-3);
        o.near(&format!("row {row} q2_hat"), r.approx.q2, want[2], 5e-5);
        o.near(&format!("row {row} q2"), r.exact.q2, want[3], 1e-3);
    }
    o.runtime(start.elapsed(), Duration::from_secs(1));
    o
}

fn sweep_table(o: &mut Outcome, name: &str, hat: HatName, table: &[[f64; 7]; 9]) {
    let values: Vec<f64> = table.iter().map(|r| r[0]).collect();
    let rows = epsilon_sweep(base(0.0), hat, &values, Perturbation::new(0.0, 0.0, 0.0, 0.0, 0.1)).unwrap();
    for (row, want) in rows.iter().zip(table) {
        let r = &row.report;
        let at = |col: &str| format!("{name} {}={} {col}", hat.column(), want[0]);
        o.near(&at("q1_hat"), r.approx.q1, want[1], 5e-5);
        o.near(&at("q1"), r.exact.q1, want[2], 2e-4);
        o.near(&at("q1 error"), r.error_q1, want[3], 2e-4);
        o.near(&at("q2_hat"), r.approx.q2, want[4], 5e-5);
        o.near(&at("q2"), r.exact.q2, want[5], 2e-4);
        o.near(&at("q2 error"), r.error_q2, want[6], 2e-4);
    }
    for w in rows.windows(2) {
        let (a, b) = (&w[0].report, &w[1].report);
        o.check(b.error_q1 > a.error_q1 && b.error_q2 > a.error_q2, || {
            format!("{name}: error not increasing at {}", w[1].hat_value)
        });
    }
}

fn tables_two_three() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    sweep_table(&mut o, "lambda sweep", HatName::Lambda, &TABLE2);
    sweep_table(&mut o, "mu sweep", HatName::Mu, &TABLE3);
    o.runtime(start.elapsed(), Duration::from_secs(5));
    o
}

fn critical_delays() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let d0 = critical_delay_symmetric(&base(0.0)).unwrap().delta;
    o.near("symmetric", d0, 0.3617, 5e-5);
    for (name, hats, want) in FIGURE_CASES {
        let d = critical_delay_modified(&model(hats, 0.1)).unwrap();
        o.near(name, d.delta_mod_first_order, want, 5e-5);
    }
    let eps: f64 = 0.1;
    let alpha = critical_delay_modified(&model([0.0, 0.0, 0.0, 1.0], eps)).unwrap();
    let second = alpha.delta_mod_alpha_second_order.unwrap_or(f64::NAN);
    o.near("alpha second order", second, d0 + 2.906e-3 * eps * eps, 1e-6);
    o.runtime(start.elapsed(), Duration::from_secs(1));
    o
}

fn variant_consistency() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let gap = |eps| {
        let d = critical_delay_modified(&model([1.0; 4], eps)).unwrap();
        (d.delta_mod_closed_form - d.delta_mod_first_order).abs()
    };
    let g = [gap(0.1), gap(0.05), gap(0.025)];
    for w in g.windows(2) {
        let r = w[0] / w[1];
        o.check((3.0..=5.0).contains(&r), || format!("ratio {r:.3} outside [3, 5] for gaps {g:?}"));
    }
    o.runtime(start.elapsed(), Duration::from_secs(1));
    o
}

fn empirical_hopf() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let settings = StabilitySettings::default();
    let cases = [
        ("symmetric", [0.0, 0.0, 0.0, 0.0]),
        ("lambda_hat", [1.0, 0.0, 0.0, 0.0]),
        ("mu_hat", [0.0, 1.0, 0.0, 0.0]),
        ("theta_hat", [0.0, 0.0, 1.0, 0.0]),
        ("all hats", [1.0, 1.0, 1.0, 1.0]),
    ];
    for (name, hats) in cases {
        match locate_hopf_empirically(&model(hats, 0.1), (0.30, 0.42), 1e-3, &settings) {
            Ok(r) => {
                let gap = r.first_order_gap();
                o.note(format!("{name} {:.4}", r.empirical_delta));
                o.check(gap <= 5e-3, || {
                    format!("{name}: empirical {:.5} vs {:.5}", r.empirical_delta, r.predicted.delta_mod_first_order)
                });
            }
            Err(e) => o.check(false, || format!("{name}: {e}")),
        }
    }
    o.runtime(start.elapsed(), Duration::from_secs(120));
    o
}

fn amplitude_model() -> QueueModel {
    QueueModel::new(base(1.0), Perturbation::new(1.0, 1.0, 1.0, 1.0, 0.1)).unwrap()
}

fn amplitude_predictions() -> Outcome {
    let mut o = Outcome::new();
    let m = amplitude_model();
    let dm = critical_delay_modified(&m).unwrap().delta_mod_first_order;
    let a = |off: f64| lindstedt_amplitude(&m, dm + off).unwrap().amplitude_tilde;
    for (off, want) in OFFSETS.iter().zip(PREDICTED) {
        o.near(&format!("offset {off}"), a(*off), want, 1e-3);
    }
    let (small, large) = (a(0.05), a(0.2));
    o.check((large - 2.0 * small).abs() <= 1e-12 * large, || {
        format!("square-root law: {large} vs 2 x {small}")
    });
    o
}

fn measured_amplitudes() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let m = amplitude_model();
    let dm = critical_delay_modified(&m).unwrap().delta_mod_first_order;
    for ((off, predicted), (w1, w2)) in OFFSETS.iter().zip(PREDICTED).zip(MEASURED) {
        let delta = dm + off;
        let cfg = IntegrationConfig::new(delta, 300.0, 200).unwrap();
        let traj = integrate(&m, &HistorySpec::figure_default(), &cfg).unwrap();
        let got = measure_amplitude(&traj, 0.8).unwrap();
        let ours = lindstedt_amplitude(&m, delta).unwrap().amplitude_tilde;
        o.note(format!("{off}: {:.4}/{:.4}", got.q1_amplitude, got.q2_amplitude));
        o.near(&format!("offset {off} q1"), got.q1_amplitude, w1, 5e-2);
        o.near(&format!("offset {off} q2"), got.q2_amplitude, w2, 5e-2);
        o.near(&format!("offset {off} prediction"), ours, predicted, 1e-3);
        for (label, measured) in [("q1", got.q1_amplitude), ("q2", got.q2_amplitude)] {
            let gap = ours - measured;
            o.check((0.05..=0.15).contains(&gap), || format!("offset {off} {label} gap {gap:.4}"));
        }
    }
    o.runtime(start.elapsed(), Duration::from_secs(120));
    o
}

fn stability_phases() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let settings = StabilitySettings::default();
    let mut expect = |label: String, m: &QueueModel, delta: f64, want: Stability| {
        match classify_stability(m, delta, &settings) {
            Ok(got) => o.check(got == want, || format!("{label} at {delta:.4}: {got}")),
            Err(e) => o.check(false, || format!("{label} at {delta:.4}: {e}")),
        }
    };
    let sym = QueueModel::symmetric(base(0.0));
    expect("symmetric".into(), &sym, 0.25, Stability::Stable);
    expect("symmetric".into(), &sym, 0.4, Stability::Oscillating);
    for (name, hats, _) in FIGURE_CASES {
        let m = model(hats, 0.1);
        let dm = critical_delay_modified(&m).unwrap().delta_mod_first_order;
        expect(name.into(), &m, dm - 0.05, Stability::Stable);
        expect(name.into(), &m, dm + 0.05, Stability::Oscillating);
    }
    o.runtime(start.elapsed(), Duration::from_secs(60));
    o
}

fn property_suite() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let hat_sets = [
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [1.0, 1.0, 1.0, 1.0],
        [-0.7, 0.4, 0.9, -0.3],
    ];

    for hats in hat_sets {
        let m = model(hats, 0.1);
        for i in -20..=20 {
            for j in -20..=20 {
                let q = QueuePair::new(5.0 + 0.5 * i as f64, 5.0 + 0.5 * j as f64);
                let (p1, p2) = m.choice_probabilities(q).unwrap();
                o.check((p1 + p2 - 1.0).abs() < 1e-12, || format!("normalization at {q:?}"));
            }
        }
        let r = equilibrium_report(&m).unwrap();
        o.check(r.residual < 1e-10, || format!("residual {} for {hats:?}", r.residual));
    }

    let sym = QueueModel::symmetric(base(0.0));
    let cfg = IntegrationConfig::new(0.4, 30.0, 50).unwrap();
    let same = integrate(&sym, &HistorySpec::new(4.9, 4.9).unwrap(), &cfg).unwrap();
    let spread = same.q1().iter().zip(same.q2()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    o.check(spread < 1e-12, || format!("symmetric collapse spread {spread:e}"));

    let hist = HistorySpec::figure_default();
    let a = integrate(&sym, &hist, &cfg).unwrap();
    let b = integrate(&sym, &hist.swapped(), &cfg).unwrap();
    o.check(a.q1() == b.q2() && a.q2() == b.q1(), || "swap equivariance broken".into());

    for hats in hat_sets {
        let e = |eps| {
            let r = equilibrium_report(&model(hats, eps)).unwrap();
            r.error_q1.max(r.error_q2)
        };
        let ratio = e(0.05) / e(0.025);
        o.check((3.0..=5.0).contains(&ratio), || format!("equilibrium error ratio {ratio:.3} for {hats:?}"));
    }

    for (delta, t_end, n) in [(0.25, 10.0, 4), (0.4, 5.0, 20)] {
        let study = convergence_order(&sym, &hist, delta, t_end, n).unwrap();
        o.check(study.observed_order >= 3.0, || {
            format!("order {:.3} at delta {delta}", study.observed_order)
        });
    }

    for (l, m, t) in [(10.0, 1.0, 1.0), (4.0, 1.0, 1.0), (20.0, 0.5, 2.0), (3.0, 2.0, 0.5)] {
        let s = equilibrium_sensitivities(&ModelParams::new(l, m, t, 0.0).unwrap());
        let ok = s.a[0] > s.b[0]
            && s.b[0] > 0.0
            && s.a[1] < s.b[1]
            && s.b[1] < 0.0
            && (s.a[2] + s.b[2]).abs() <= 1e-14 * s.a[2].abs()
            && (s.a[3] + s.b[3]).abs() <= 1e-14 * s.a[3].abs();
        o.check(ok, || format!("sign structure at ({l}, {m}, {t}): {s:?}"));
    }
    o.runtime(start.elapsed(), Duration::from_secs(30));
    o
}

fn main() -> ExitCode {
    let checks: [Check; 9] = [
        ("equilibrium table", table_one),
        ("parameter sweep tables", tables_two_three),
        ("critical delays", critical_delays),
        ("critical delay variants", variant_consistency),
        ("empirical Hopf location", empirical_hopf),
        ("amplitude predictions", amplitude_predictions),
        ("measured amplitudes", measured_amplitudes),
        ("stability phases", stability_phases),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, run)) in checks.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        let secs = start.elapsed().as_secs_f64();
        let notes = if o.notes.is_empty() { String::new() } else { format!(" [{}]", o.notes.join(", ")) };
        if o.pass {
            println!("criterion {}: {status} {name} ({secs:.2}s){notes}", i + 1);
        } else {
            failed += 1;
            println!("criterion {}: {status} {name} ({secs:.2}s): {}", i + 1, o.detail);
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

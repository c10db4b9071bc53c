//! Reference values from the published equilibrium tables and figure captions,
//! as printed (four decimals).
//!
//! The base parameters throughout are `lambda = 10, mu = 1, theta = 1`, with
//! `epsilon = 0.1` and history `q1 = 4.99, q2 = 5.01`.

// hats (lambda, mu, theta, alpha), then q1_hat, q1, q2_hat, q2
pub const TABLE1: [([f64; 4], [f64; 4]); 5] = [
    ([1.0, 0.0, 0.0, 0.0], [5.0292, 5.0290, 5.0208, 5.0207]),
    ([0.0, 0.1, 0.0, 0.0], [4.9708, 4.9710, 4.9792, 4.9793]),
    ([0.0, 0.0, 1.0, 0.0], [4.7917, 4.8000, 5.2084, 5.2000]),
    ([0.0, 0.0, 0.0, 1.0], [5.0417, 5.0417, 4.9583, 4.9583]),
    ([1.0, 0.1, 1.0, 1.0], [4.8333, 4.8400, 5.1667, 5.1600]),
];

// swept value, q1_hat, q1, q1 error, q2_hat, q2, q2 error
pub const TABLE2: [[f64; 7]; 9] = [
    [1.0, 5.0292, 5.0290, 2e-4, 5.0208, 5.0207, 1e-4],
    [1.5, 5.0438, 5.0435, 3e-4, 5.0313, 5.0311, 2e-4],
    [2.0, 5.0583, 5.0578, 5e-4, 5.0417, 5.0413, 4e-4],
    [2.5, 5.0729, 5.0722, 7e-4, 5.0521, 5.0515, 6e-4],
    [3.0, 5.0875, 5.0864, 0.0011, 5.0625, 5.0617, 8e-4],
    [3.5, 5.1021, 5.1006, 0.0015, 5.0729, 5.0719, 0.0010],
    [4.0, 5.1167, 5.1147, 0.0020, 5.0833, 5.0820, 0.0013],
    [4.5, 5.1313, 5.1288, 0.0025, 5.0938, 5.0920, 0.0018],
    [5.0, 5.1458, 5.1429, 0.0029, 5.1042, 5.1020, 0.0022],
];

pub const TABLE3: [[f64; 7]; 9] = [
    [0.10, 4.9708, 4.9710, 2e-4, 4.9792, 4.9793, 1e-4],
    [0.15, 4.9562, 4.9566, 4e-4, 4.9688, 4.9690, 2e-4],
    [0.20, 4.9417, 4.9423, 6e-4, 4.9583, 4.9588, 5e-4],
    [0.25, 4.9271, 4.9281, 0.001, 4.9479, 4.9487, 8e-4],
    [0.30, 4.9125, 4.9140, 0.0015, 4.9375, 4.9386, 0.0011],
    [0.35, 4.8979, 4.9000, 0.0021, 4.9271, 4.9285, 0.0014],
    [0.40, 4.8833, 4.8860, 0.0027, 4.9167, 4.9186, 0.0019],
    [0.45, 4.8688, 4.8721, 0.0033, 4.9063, 4.9087, 0.0024],
    [0.50, 4.8542, 4.8583, 0.0041, 4.8958, 4.8988, 0.0030],
];

/// Perturbations of the stability figures with their quoted critical delays.
pub const FIGURE_CASES: [(&str, [f64; 4], f64); 6] = [
    ("symmetric", [0.0, 0.0, 0.0, 0.0], 0.3617),
    ("lambda_hat", [1.0, 0.0, 0.0, 0.0], 0.3596),
    ("mu_hat", [0.0, 1.0, 0.0, 0.0], 0.3646),
    ("theta_hat", [0.0, 0.0, 1.0, 0.0], 0.3408),
    ("alpha_hat", [0.0, 0.0, 0.0, 1.0], 0.3617),
    ("all hats", [1.0, 1.0, 1.0, 1.0], 0.3416),
];

pub const OFFSETS: [f64; 4] = [0.05, 0.1, 0.15, 0.2];
pub const PREDICTED: [f64; 4] = [1.4562, 2.0594, 2.5222, 2.9124];
pub const MEASURED: [(f64, f64); 4] = [
    (1.3593, 1.3524),
    (1.9576, 1.9503),
    (2.4265, 2.4208),
    (2.8292, 2.8268),
];

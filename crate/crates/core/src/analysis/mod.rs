//! Numerical checks of the asymptotic predictions: exact equilibria, amplitude
//! measurement on simulated trajectories, and empirical location of the Hopf point.

mod amplitude;
mod equilibrium;
mod stability;
pub mod table;

pub use amplitude::{measure_amplitude, peak_to_peak, AmplitudeMeasurement, MIN_TAIL_PERIODS};
pub use equilibrium::{
    epsilon_sweep, equilibrium_report, fixed_point_equilibrium, EquilibriumReport, HatName,
    SweepRow, JACOBIAN_REL_STEP, NEWTON_MAX_ITERATIONS, NEWTON_RESIDUAL_TOL,
};
pub use stability::{
    classify_resolved, classify_stability, locate_hopf_empirically, HopfReport, Stability,
    StabilitySettings, WindowAmplitudes, DEFAULT_HOPF_TOLERANCE, SATURATION_GROWTH,
};

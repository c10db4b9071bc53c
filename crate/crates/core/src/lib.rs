//! Fluid model of two queues whose customers choose by delayed queue-length
//! information, with asymmetric parameters on the first queue.
//!
//! - [`model`]: parameters and the delay-equation right-hand side.
//! - [`dde`]: fixed-step method-of-steps RK4 integrator.
//! - [`asymptotics`]: closed-form equilibrium, critical-delay and amplitude formulas.
//! - [`analysis`]: fixed-point solving, amplitude measurement, empirical Hopf location.

pub mod analysis;
pub mod asymptotics;
pub mod dde;
pub mod error;
pub mod model;

pub use error::{Error, ErrorKind, Result};
pub use model::{ModelParams, Perturbation, QueueModel, QueuePair};

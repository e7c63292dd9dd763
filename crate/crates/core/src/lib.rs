//! Simulation and analysis toolkit for optical dipole trapping of a single
//! ion loaded from a linear RF (Paul) trap.
//!
//! The crate is organized around the stages of such an experiment:
//!
//! * [`physics`] — closed-form derived quantities of the dipole and RF traps
//!   (depth, trap frequencies, scattering rate, recoil-heating lifetime).
//! * [`potentials`] — composable time-dependent potential/force fields for
//!   every confinement term (Gaussian beam, RF quadrupole, DC well, stray
//!   force).
//! * [`stability`] — Mathieu/Floquet stability analysis of the RF ramp-down.
//! * [`dynamics`] — Monte Carlo trajectory simulation of the full
//!   RF-to-optical handoff protocol with stochastic photon-recoil heating.
//! * [`heating`] — Markovian heating model: closed-form survival curve,
//!   joint fitting, lifetime extraction, synthetic data generation.
//!
//! All quantities are SI unless a name says otherwise. Everything here is
//! deterministic under a fixed seed: ensembles derive one RNG stream per
//! trajectory from a master seed and merge results by counting only.

pub mod beam;
pub mod constants;
pub mod dynamics;
pub mod error;
pub mod heating;
pub mod physics;
pub mod potentials;
pub mod species;
pub mod stability;
pub mod trap;
pub mod vec3;

pub use beam::GaussianBeam;
pub use error::Error;
pub use species::IonSpecies;
pub use trap::{AxialLandscape, TrapConfiguration};

/// Crate-wide result type.
pub type Result<T> = std::result::Result<T, Error>;

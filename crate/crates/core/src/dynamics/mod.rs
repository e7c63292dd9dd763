//! Monte Carlo trajectory simulation of the RF-to-optical handoff
//! protocol, with stochastic photon-recoil heating.

pub mod envelope;
pub mod integrator;
pub mod simulation;
pub mod timeline;

pub use envelope::{Envelope, SegmentShape};
pub use integrator::{recoil_kick, sample_initial_state, Integrator, IonState};
pub use simulation::{
    EscapeReason, Outcome, SimConfig, Simulation, SurvivalEstimate, TrajectoryResult,
    TrajectorySample,
};
pub use timeline::{ProtocolTimeline, RampShape};

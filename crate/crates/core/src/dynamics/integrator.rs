//! Second-order symplectic (velocity Verlet) propagation and the
//! stochastic single-photon recoil kick.

use crate::error::Error;
use crate::potentials::CompositeField;
use crate::vec3::{self, Vec3};
use crate::Result;
use rand::Rng;
use rand_distr::{Distribution, Normal, UnitSphere};

/// Phase-space state of the ion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonState {
    pub position: Vec3,
    pub velocity: Vec3,
    pub time: f64,
}

impl IonState {
    pub fn at_rest() -> Self {
        IonState {
            position: vec3::ZERO,
            velocity: vec3::ZERO,
            time: 0.0,
        }
    }

    pub fn is_finite(&self) -> bool {
        vec3::is_finite(self.position) && vec3::is_finite(self.velocity) && self.time.is_finite()
    }
}

/// Velocity-Verlet stepper over a composite field.
pub struct Integrator<'a> {
    fields: &'a CompositeField,
    mass: f64,
    dt: f64,
}

impl<'a> Integrator<'a> {
    pub fn new(fields: &'a CompositeField, mass: f64, dt: f64) -> Self {
        Integrator { fields, mass, dt }
    }

    /// One leapfrog step: half kick, drift, half kick.
    pub fn step(&self, state: &mut IonState) {
        let dt = self.dt;
        let inv_m = 1.0 / self.mass;
        let f0 = self.fields.force(state.position, state.time);
        let v_half = vec3::axpy(state.velocity, 0.5 * dt * inv_m, f0);
        state.position = vec3::axpy(state.position, dt, v_half);
        state.time += dt;
        let f1 = self.fields.force(state.position, state.time);
        state.velocity = vec3::axpy(v_half, 0.5 * dt * inv_m, f1);
    }

    /// Total energy ½m|v|² + U(r, t); meaningful for static fields.
    pub fn energy(&self, state: &IonState) -> f64 {
        0.5 * self.mass * vec3::norm_sq(state.velocity)
            + self.fields.value(state.position, state.time)
    }
}

/// Draw position and velocity from the Boltzmann distribution of a 3D
/// harmonic well with per-axis frequencies `omega` at temperature
/// `temperature`. T = 0 returns the rest state exactly.
pub fn sample_initial_state(
    temperature: f64,
    omega: [f64; 3],
    mass: f64,
    rng: &mut impl Rng,
) -> Result<IonState> {
    if temperature < 0.0 {
        return Err(Error::invalid("t_init", "temperature must be >= 0"));
    }
    if temperature == 0.0 {
        return Ok(IonState::at_rest());
    }
    if omega.iter().any(|w| *w <= 0.0) {
        return Err(Error::invalid(
            "omega",
            "thermal sampling requires positive trap frequencies",
        ));
    }
    let sigma_v = (crate::constants::BOLTZMANN * temperature / mass).sqrt();
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    let mut position = vec3::ZERO;
    let mut velocity = vec3::ZERO;
    for k in 0..3 {
        position[k] = normal.sample(rng) * sigma_v / omega[k];
        velocity[k] = normal.sample(rng) * sigma_v;
    }
    Ok(IonState {
        position,
        velocity,
        time: 0.0,
    })
}

/// Apply one photon-recoil kick: absorbed momentum ħk along the beam plus
/// spontaneously emitted momentum ħk in an isotropic random direction.
/// Transfers 2·E_r per kick on ensemble average.
pub fn recoil_kick(
    state: &mut IonState,
    beam_direction: Vec3,
    photon_momentum: f64,
    mass: f64,
    rng: &mut impl Rng,
) {
    let emission: [f64; 3] = UnitSphere.sample(rng);
    let dv = photon_momentum / mass;
    state.velocity = vec3::axpy(state.velocity, dv, beam_direction);
    state.velocity = vec3::axpy(state.velocity, dv, emission);
}

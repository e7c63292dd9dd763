//! Monte Carlo simulation of the full handoff protocol: RF ramp-down,
//! hold in the optical potential with stochastic recoil heating, RF
//! ramp-up, capture test.

use crate::beam::GaussianBeam;
use crate::dynamics::envelope::Envelope;
use crate::dynamics::integrator::{recoil_kick, sample_initial_state, Integrator, IonState};
use crate::dynamics::timeline::ProtocolTimeline;
use crate::error::Error;
use crate::physics;
use crate::potentials::{CompositeField, DcField, DipoleBeamField, Field, RfField, RfMode, StrayForce};
use crate::species::IonSpecies;
use crate::trap::TrapConfiguration;
use crate::vec3::{self, Vec3};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Escape thresholds relative to the beam geometry during the hold.
const TRANSVERSE_ESCAPE_WAISTS: f64 = 5.0;
const AXIAL_ESCAPE_RAYLEIGH: f64 = 3.0;

/// Upper bound on the per-step scattering probability for valid Poisson
/// thinning.
const MAX_SCATTER_PROB_PER_STEP: f64 = 0.1;

/// Numerical controls of one simulation.
#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    /// Integration time step (s).
    pub time_step: f64,
    /// How the RF drive enters the equations of motion.
    pub rf_mode: RfMode,
    /// Initial Doppler-cooled temperature (K).
    pub initial_temperature: f64,
    /// Whether to apply stochastic photon-recoil kicks.
    pub recoil_heating: bool,
    /// Master RNG seed; trajectory i uses stream `stream_base + i`.
    pub seed: u64,
    /// Hard cap on integration steps per trajectory.
    pub max_steps: u64,
    /// Record every n-th step into the trajectory sample buffer
    /// (0 disables recording).
    pub record_stride: usize,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            time_step: 5e-8,
            rf_mode: RfMode::Pseudopotential,
            initial_temperature: 2e-3,
            recoil_heating: true,
            seed: 1,
            max_steps: 500_000_000,
            record_stride: 0,
        }
    }
}

/// One recorded point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub time: f64,
    pub position: Vec3,
    pub velocity: Vec3,
}

/// Why a trajectory counts as lost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EscapeReason {
    /// Left the beam transversally (ρ > 5 w₀) during the hold.
    Transverse,
    /// Left along the beam (|ζ| > 3 z_R) during the hold.
    AlongBeam,
    /// Energy in the restored RF+DC pseudopotential exceeds the RF trap
    /// depth after ramp-up.
    CaptureTest,
}

/// Final disposition of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Survived,
    Escaped { time: f64, reason: EscapeReason },
}

impl Outcome {
    pub fn survived(&self) -> bool {
        matches!(self, Outcome::Survived)
    }
}

/// Trajectory result: outcome, final state, optional samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryResult {
    pub outcome: Outcome,
    pub final_state: IonState,
    pub recoil_kicks: u64,
    pub samples: Vec<TrajectorySample>,
}

/// Survival statistics of an ensemble of trapping attempts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurvivalEstimate {
    pub n_success: u64,
    pub n_total: u64,
    pub p_hat: f64,
    /// Wilson score interval at the stated confidence level.
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence_level: f64,
}

impl SurvivalEstimate {
    /// Binomial (Wilson) interval at z = 1, i.e. the 68.3% level matching
    /// one-sigma statistical error bars.
    pub fn from_counts(n_success: u64, n_total: u64) -> Self {
        let n = n_total as f64;
        let p = if n_total == 0 {
            0.0
        } else {
            n_success as f64 / n
        };
        let z = 1.0;
        let (ci_low, ci_high) = if n_total == 0 {
            (0.0, 1.0)
        } else {
            let denom = 1.0 + z * z / n;
            let center = (p + z * z / (2.0 * n)) / denom;
            let half = z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom;
            ((center - half).max(0.0), (center + half).min(1.0))
        };
        SurvivalEstimate {
            n_success,
            n_total,
            p_hat: p,
            ci_low,
            ci_high,
            confidence_level: 0.6827,
        }
    }
}

/// A fully assembled trapping attempt: fields consistent with the
/// protocol timeline, ready to integrate trajectories.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub species: IonSpecies,
    pub beam: GaussianBeam,
    pub trap: TrapConfiguration,
    pub timeline: ProtocolTimeline,
    pub config: SimConfig,
    fields: CompositeField,
    dipole: DipoleBeamField,
    /// Peak scattering rate of the beam (1/s).
    scattering_rate: f64,
    /// RF trap depth used by the post-ramp-up capture test (J).
    rf_depth: f64,
}

impl Simulation {
    pub fn new(
        species: IonSpecies,
        beam: GaussianBeam,
        trap: TrapConfiguration,
        timeline: ProtocolTimeline,
        config: SimConfig,
    ) -> Result<Self> {
        species.validate()?;
        beam.validate_for_evaluation()?;
        trap.validate()?;
        timeline.validate()?;
        if !(config.time_step > 0.0 && config.time_step.is_finite()) {
            return Err(Error::invalid("sim.time_step", "must be > 0"));
        }
        if config.rf_mode == RfMode::FullDrive {
            let limit = 2.0 * std::f64::consts::PI / (20.0 * trap.omega_rf);
            if config.time_step > limit {
                return Err(Error::invalid(
                    "sim.time_step",
                    format!("full-drive mode requires step <= {limit:e} s"),
                ));
            }
        }
        let scattering_rate = physics::scattering_rate(&beam, &species)?;
        if config.recoil_heating && scattering_rate * config.time_step >= MAX_SCATTER_PROB_PER_STEP
        {
            return Err(Error::invalid(
                "sim.time_step",
                format!(
                    "scattering probability per step {:.3} too large for thinning; \
                     reduce the step below {:e} s",
                    scattering_rate * config.time_step,
                    MAX_SCATTER_PROB_PER_STEP / scattering_rate
                ),
            ));
        }
        let (t_on, t_off) = timeline.dipole_window();
        let dipole = DipoleBeamField::gated(beam.clone(), &species, t_on, t_off)?;
        let rf = RfField::new(&trap, &species, config.rf_mode, timeline.rf_envelope())?;
        let dc = DcField::new(&trap, &species)?;
        let stray = StrayForce {
            force: trap.stray_force,
        };
        let fields = CompositeField::compose(vec![
            Field::DipoleBeam(dipole.clone()),
            Field::Rf(rf),
            Field::Dc(dc),
            Field::Stray(stray),
        ])?;
        let rf_depth = physics::rf_trap_depth_estimate(&trap, &species);
        Ok(Simulation {
            species,
            beam,
            trap,
            timeline,
            config,
            fields,
            dipole,
            scattering_rate,
            rf_depth,
        })
    }

    pub fn fields(&self) -> &CompositeField {
        &self.fields
    }

    /// Thermal initial state in the combined RF-pseudopotential + DC well.
    pub fn sample_initial(&self, rng: &mut impl Rng) -> Result<IonState> {
        let omega = self.trap.combined_well_frequencies()?;
        sample_initial_state(
            self.config.initial_temperature,
            omega,
            self.species.mass,
            rng,
        )
    }

    /// Energy in the restored RF+DC pseudopotential, the quantity the
    /// post-ramp-up capture test compares against the RF trap depth.
    pub fn capture_energy(&self, state: &IonState) -> f64 {
        let m = self.species.mass;
        let r = state.position;
        let kinetic = 0.5 * m * vec3::norm_sq(state.velocity);
        let wx = self.trap.omega_x;
        let wy = self.trap.omega_y;
        let rf_pseudo = 0.5 * m * (wx * wx * r[0] * r[0] + wy * wy * r[1] * r[1]);
        let wz2 = self.trap.omega_z * self.trap.omega_z;
        let dc = 0.5 * m * wz2 * r[2] * r[2] - 0.25 * m * wz2 * (r[0] * r[0] + r[1] * r[1]);
        kinetic + rf_pseudo + dc
    }

    fn escape_during_hold(&self, r: Vec3) -> Option<EscapeReason> {
        let d = vec3::sub(r, self.beam.focus);
        let zeta = vec3::dot(d, self.beam.direction);
        let rho_sq = (vec3::norm_sq(d) - zeta * zeta).max(0.0);
        let w0 = self.beam.waist_radius;
        if rho_sq > TRANSVERSE_ESCAPE_WAISTS * TRANSVERSE_ESCAPE_WAISTS * w0 * w0 {
            return Some(EscapeReason::Transverse);
        }
        if zeta.abs() > AXIAL_ESCAPE_RAYLEIGH * self.beam.rayleigh_range() {
            return Some(EscapeReason::AlongBeam);
        }
        None
    }

    /// Propagate one trajectory through the whole protocol.
    ///
    /// Deterministic for a given initial state and RNG; recoil kicks are
    /// Poisson-thinned at the local-intensity-scaled scattering rate.
    pub fn integrate_trajectory(
        &self,
        initial: IonState,
        rng: &mut impl Rng,
    ) -> Result<TrajectoryResult> {
        let dt = self.config.time_step;
        let t_end = self.timeline.t_ramp_up_end();
        let hold_start = self.timeline.t_hold_start();
        let hold_end = self.timeline.t_hold_end();
        let n_steps = (t_end / dt).ceil() as u64;
        if n_steps > self.config.max_steps {
            return Err(Error::invalid(
                "sim.max_steps",
                format!("protocol needs {n_steps} steps, cap is {}", self.config.max_steps),
            ));
        }
        let integrator = Integrator::new(&self.fields, self.species.mass, dt);
        let photon_momentum = self.species.photon_momentum();
        let recoil = self.config.recoil_heating && self.scattering_rate > 0.0;
        let mut state = initial;
        let mut kicks = 0u64;
        let mut samples = Vec::new();
        let stride = self.config.record_stride;
        for step in 0..n_steps {
            if stride > 0 && step as usize % stride == 0 {
                samples.push(TrajectorySample {
                    time: state.time,
                    position: state.position,
                    velocity: state.velocity,
                });
            }
            integrator.step(&mut state);
            if !state.is_finite() {
                return Err(Error::IntegratorFailure {
                    time: state.time,
                    detail: format!("non-finite state after step {step}"),
                });
            }
            if recoil && self.dipole.is_on(state.time) {
                let rate = self.scattering_rate * self.dipole.relative_intensity(state.position);
                if rng.gen::<f64>() < rate * dt {
                    recoil_kick(
                        &mut state,
                        self.beam.direction,
                        photon_momentum,
                        self.species.mass,
                        rng,
                    );
                    kicks += 1;
                }
            }
            if state.time >= hold_start && state.time < hold_end {
                if let Some(reason) = self.escape_during_hold(state.position) {
                    if stride > 0 {
                        samples.push(TrajectorySample {
                            time: state.time,
                            position: state.position,
                            velocity: state.velocity,
                        });
                    }
                    return Ok(TrajectoryResult {
                        outcome: Outcome::Escaped {
                            time: state.time,
                            reason,
                        },
                        final_state: state,
                        recoil_kicks: kicks,
                        samples,
                    });
                }
            }
        }
        if stride > 0 {
            samples.push(TrajectorySample {
                time: state.time,
                position: state.position,
                velocity: state.velocity,
            });
        }
        let outcome = if self.capture_energy(&state) < self.rf_depth {
            Outcome::Survived
        } else {
            Outcome::Escaped {
                time: state.time,
                reason: EscapeReason::CaptureTest,
            }
        };
        Ok(TrajectoryResult {
            outcome,
            final_state: state,
            recoil_kicks: kicks,
            samples,
        })
    }

    /// RNG for trajectory `index` on top of `stream_base`: one ChaCha
    /// stream per trajectory derived from the master seed.
    pub fn trajectory_rng(&self, stream_base: u64, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        rng.set_stream(stream_base.wrapping_add(index));
        rng
    }

    /// Run one trajectory on its own stream (sampling included).
    pub fn run_one(&self, stream_base: u64, index: u64) -> Result<TrajectoryResult> {
        let mut rng = self.trajectory_rng(stream_base, index);
        let initial = self.sample_initial(&mut rng)?;
        self.integrate_trajectory(initial, &mut rng)
    }

    /// Run `n` independent trajectories in parallel and count survivors.
    ///
    /// `stream_base` offsets the per-trajectory RNG streams so that sweeps
    /// over many design points stay decorrelated under one master seed.
    pub fn run_ensemble(&self, n: u64, stream_base: u64) -> Result<SurvivalEstimate> {
        if n == 0 {
            return Err(Error::EmptyEnsemble);
        }
        let outcomes: Vec<Result<bool>> = (0..n)
            .into_par_iter()
            .map(|i| Ok(self.run_one(stream_base, i)?.outcome.survived()))
            .collect();
        let mut n_success = 0u64;
        for o in outcomes {
            if o? {
                n_success += 1;
            }
        }
        Ok(SurvivalEstimate::from_counts(n_success, n))
    }
}

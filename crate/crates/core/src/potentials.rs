//! Composable time-dependent potential/force fields for every confinement
//! term: the focused Gaussian beam, the RF quadrupole (full drive or
//! pseudopotential), the DC well with its optional axial landscape, and a
//! uniform stray force.
//!
//! Field objects are immutable after construction; evaluation is pure, so
//! they can be shared across threads freely.

use crate::beam::GaussianBeam;
use crate::dynamics::envelope::Envelope;
use crate::error::Error;
use crate::physics;
use crate::species::IonSpecies;
use crate::trap::{AxialLandscape, TrapConfiguration};
use crate::vec3::{self, Vec3};
use crate::Result;

/// The optical potential of a focused Gaussian beam,
/// U(ρ,ζ) = −U₀ (w₀/w(ζ))² exp(−2ρ²/w(ζ)²) with w(ζ) = w₀√(1+(ζ/z_R)²),
/// where ζ runs along the beam and ρ perpendicular to it.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleBeamField {
    pub beam: GaussianBeam,
    /// Precomputed potential depth |U₀| (J).
    pub depth: f64,
    /// Time window [on, off) during which the beam is powered;
    /// `None` means always on.
    gate: Option<(f64, f64)>,
}

impl DipoleBeamField {
    pub fn new(beam: GaussianBeam, species: &IonSpecies) -> Result<Self> {
        beam.validate_for_evaluation()?;
        species.validate()?;
        let depth = physics::dipole_potential_depth(&beam, species)?;
        Ok(DipoleBeamField {
            beam,
            depth,
            gate: None,
        })
    }

    /// Beam powered only for t ∈ [on, off).
    pub fn gated(beam: GaussianBeam, species: &IonSpecies, on: f64, off: f64) -> Result<Self> {
        let mut f = Self::new(beam, species)?;
        f.gate = Some((on, off));
        Ok(f)
    }

    #[inline]
    pub fn is_on(&self, t: f64) -> bool {
        match self.gate {
            None => true,
            Some((on, off)) => t >= on && t < off,
        }
    }

    /// Local intensity relative to the peak, in [0, 1].
    #[inline]
    pub fn relative_intensity(&self, r: Vec3) -> f64 {
        let d = vec3::sub(r, self.beam.focus);
        let zeta = vec3::dot(d, self.beam.direction);
        let rho_sq = vec3::norm_sq(d) - zeta * zeta;
        let zr = self.beam.rayleigh_range();
        let g = 1.0 + (zeta / zr) * (zeta / zr);
        let w0 = self.beam.waist_radius;
        (1.0 / g) * (-2.0 * rho_sq.max(0.0) / (w0 * w0 * g)).exp()
    }

    pub fn value(&self, r: Vec3, t: f64) -> f64 {
        if !self.is_on(t) {
            return 0.0;
        }
        -self.depth * self.relative_intensity(r)
    }

    pub fn force(&self, r: Vec3, t: f64) -> Vec3 {
        if !self.is_on(t) || self.depth == 0.0 {
            return vec3::ZERO;
        }
        let d = vec3::sub(r, self.beam.focus);
        let n = self.beam.direction;
        let zeta = vec3::dot(d, n);
        let rho_vec = vec3::sub(d, vec3::scale(n, zeta));
        let rho_sq = vec3::norm_sq(rho_vec);
        let zr = self.beam.rayleigh_range();
        let g = 1.0 + (zeta / zr) * (zeta / zr);
        let w0 = self.beam.waist_radius;
        let intensity = (1.0 / g) * (-2.0 * rho_sq / (w0 * w0 * g)).exp();
        // F_ρ⃗ = −(4U₀/(w₀²g)) I ρ⃗ ;  F_ζ = −U₀ I (2ζ/z_R²) g⁻¹ (1 − 2ρ²/(w₀²g))
        let radial_coef = -4.0 * self.depth * intensity / (w0 * w0 * g);
        let axial = -self.depth * intensity * (2.0 * zeta / (zr * zr)) / g
            * (1.0 - 2.0 * rho_sq / (w0 * w0 * g));
        vec3::axpy(vec3::scale(rho_vec, radial_coef), axial, n)
    }
}

/// How the RF drive enters the equations of motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RfMode {
    /// Instantaneous oscillating quadrupole at Ω_RF (resolves micromotion).
    FullDrive,
    /// Time-averaged harmonic pseudopotential.
    Pseudopotential,
}

/// The RF confinement with its amplitude envelope.
///
/// In pseudopotential mode the potential is ½m(f·ω_x)²x² + ½m(f·ω_y)²y²
/// with f the envelope. Full-drive mode realizes an ideal oscillating
/// quadrupole whose gradient is back-computed from ω_x via
/// q = 2√2·ω_x/Ω_RF (it assumes |q_y| = q_x, i.e. a symmetric quadrupole).
#[derive(Debug, Clone, PartialEq)]
pub struct RfField {
    pub omega_rf: f64,
    pub omega_x: f64,
    pub omega_y: f64,
    pub mode: RfMode,
    pub envelope: Envelope,
    mass: f64,
}

impl RfField {
    pub fn new(
        trap: &TrapConfiguration,
        species: &IonSpecies,
        mode: RfMode,
        envelope: Envelope,
    ) -> Result<Self> {
        trap.validate()?;
        species.validate()?;
        Ok(RfField {
            omega_rf: trap.omega_rf,
            omega_x: trap.omega_x,
            omega_y: trap.omega_y,
            mode,
            envelope,
            mass: species.mass,
        })
    }

    /// Instantaneous curvature amplitude of the full-drive quadrupole,
    /// κ(t) = (Ω²q/2)·f(t)·cos(Ω_RF t), so that m·κ matches the Mathieu
    /// equation at the configured q.
    #[inline]
    fn full_drive_curvature(&self, t: f64) -> f64 {
        let q = 2.0 * f64::sqrt(2.0) * self.omega_x / self.omega_rf;
        let f = self.envelope.at(t);
        0.5 * self.omega_rf * self.omega_rf * q * f * (self.omega_rf * t).cos()
    }

    pub fn value(&self, r: Vec3, t: f64) -> f64 {
        match self.mode {
            RfMode::Pseudopotential => {
                let f = self.envelope.at(t);
                let wx = f * self.omega_x;
                let wy = f * self.omega_y;
                0.5 * self.mass * (wx * wx * r[0] * r[0] + wy * wy * r[1] * r[1])
            }
            RfMode::FullDrive => {
                let k = self.full_drive_curvature(t);
                0.5 * self.mass * k * (r[0] * r[0] - r[1] * r[1])
            }
        }
    }

    pub fn force(&self, r: Vec3, t: f64) -> Vec3 {
        match self.mode {
            RfMode::Pseudopotential => {
                let f = self.envelope.at(t);
                let wx = f * self.omega_x;
                let wy = f * self.omega_y;
                [
                    -self.mass * wx * wx * r[0],
                    -self.mass * wy * wy * r[1],
                    0.0,
                ]
            }
            RfMode::FullDrive => {
                let k = self.full_drive_curvature(t);
                [-self.mass * k * r[0], self.mass * k * r[1], 0.0]
            }
        }
    }
}

/// Static DC well: focusing along z with frequency ω_z, defocusing each
/// radial axis with curvature −½mω_z² (Laplace). The optional landscape
/// adds the contact-potential barrier along z.
#[derive(Debug, Clone, PartialEq)]
pub struct DcField {
    pub omega_z: f64,
    pub landscape: Option<AxialLandscape>,
    mass: f64,
}

impl DcField {
    pub fn new(trap: &TrapConfiguration, species: &IonSpecies) -> Result<Self> {
        trap.validate()?;
        species.validate()?;
        Ok(DcField {
            omega_z: trap.omega_z,
            landscape: trap.landscape,
            mass: species.mass,
        })
    }

    pub fn value(&self, r: Vec3, _t: f64) -> f64 {
        let wz2 = self.omega_z * self.omega_z;
        let z = r[2];
        let axial = match self.landscape {
            None => 0.5 * self.mass * wz2 * z * z,
            Some(l) => {
                let zb2 = l.barrier_distance * l.barrier_distance;
                0.5 * self.mass * wz2 * z * z * (1.0 - z * z / (2.0 * zb2))
            }
        };
        axial - 0.25 * self.mass * wz2 * (r[0] * r[0] + r[1] * r[1])
    }

    pub fn force(&self, r: Vec3, _t: f64) -> Vec3 {
        let wz2 = self.omega_z * self.omega_z;
        let z = r[2];
        let axial = match self.landscape {
            None => -self.mass * wz2 * z,
            Some(l) => {
                let zb2 = l.barrier_distance * l.barrier_distance;
                -self.mass * wz2 * z * (1.0 - z * z / zb2)
            }
        };
        [
            0.5 * self.mass * wz2 * r[0],
            0.5 * self.mass * wz2 * r[1],
            axial,
        ]
    }
}

/// Constant uniform residual force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrayForce {
    pub force: Vec3,
}

impl StrayForce {
    pub fn value(&self, r: Vec3, _t: f64) -> f64 {
        -vec3::dot(self.force, r)
    }

    pub fn force(&self, _r: Vec3, _t: f64) -> Vec3 {
        self.force
    }
}

/// One confinement term.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    DipoleBeam(DipoleBeamField),
    Rf(RfField),
    Dc(DcField),
    Stray(StrayForce),
}

impl Field {
    /// Potential energy of the ion at (r, t) (J).
    pub fn value(&self, r: Vec3, t: f64) -> f64 {
        match self {
            Field::DipoleBeam(f) => f.value(r, t),
            Field::Rf(f) => f.value(r, t),
            Field::Dc(f) => f.value(r, t),
            Field::Stray(f) => f.value(r, t),
        }
    }

    /// −∇U at (r, t) (N).
    pub fn force(&self, r: Vec3, t: f64) -> Vec3 {
        match self {
            Field::DipoleBeam(f) => f.force(r, t),
            Field::Rf(f) => f.force(r, t),
            Field::Dc(f) => f.force(r, t),
            Field::Stray(f) => f.force(r, t),
        }
    }
}

/// Sum of confinement terms sharing one species and time base.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositeField {
    fields: Vec<Field>,
}

impl CompositeField {
    pub fn compose(fields: Vec<Field>) -> Result<Self> {
        if fields.is_empty() {
            return Err(Error::EmptyComposite);
        }
        Ok(CompositeField { fields })
    }

    pub fn members(&self) -> &[Field] {
        &self.fields
    }

    pub fn value(&self, r: Vec3, t: f64) -> f64 {
        self.fields.iter().map(|f| f.value(r, t)).sum()
    }

    pub fn force(&self, r: Vec3, t: f64) -> Vec3 {
        let mut total = vec3::ZERO;
        for f in &self.fields {
            total = vec3::add(total, f.force(r, t));
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::BOLTZMANN;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn mg() -> IonSpecies {
        IonSpecies::mg24()
    }

    fn beam() -> GaussianBeam {
        GaussianBeam::at_45_degrees(0.190, 7e-6, -2.0 * PI * 275e9, 280e-9)
    }

    fn dipole() -> DipoleBeamField {
        DipoleBeamField::new(beam(), &mg()).unwrap()
    }

    #[test]
    fn dipole_value_at_focus_is_minus_depth() {
        let f = dipole();
        assert!((f.value(vec3::ZERO, 0.0) + f.depth).abs() < 1e-30);
    }

    #[test]
    fn dipole_value_at_one_waist() {
        let f = dipole();
        // point at ρ = w₀ perpendicular to the beam, ζ = 0
        let r = vec3::scale([1.0 / f64::sqrt(2.0), 0.0, -1.0 / f64::sqrt(2.0)], 7e-6);
        let expected = -f.depth * (-2.0f64).exp();
        assert!((f.value(r, 0.0) - expected).abs() < 1e-12 * f.depth);
    }

    #[test]
    fn dipole_bounded_and_vanishing_far_away() {
        let f = dipole();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let r = [
                rng.gen_range(-30e-6..30e-6),
                rng.gen_range(-30e-6..30e-6),
                rng.gen_range(-30e-6..30e-6),
            ];
            let v = f.value(r, 0.0);
            assert!(v <= 0.0 && v >= -f.depth);
        }
        assert!(f.value([1e-2, 0.0, 0.0], 0.0).abs() < 1e-12 * f.depth);
    }

    #[test]
    fn dipole_gate_window() {
        let f = DipoleBeamField::gated(beam(), &mg(), 1e-6, 2e-6).unwrap();
        assert_eq!(f.value(vec3::ZERO, 0.5e-6), 0.0);
        assert!(f.value(vec3::ZERO, 1.5e-6) < 0.0);
        assert_eq!(f.value(vec3::ZERO, 2.5e-6), 0.0);
    }

    fn fields_under_test() -> Vec<(&'static str, Field, f64)> {
        let trap = TrapConfiguration::reference();
        let mut trap_landscape = trap.clone();
        trap_landscape.landscape = Some(AxialLandscape::new(&mg(), trap.omega_z, 100e-6));
        vec![
            ("dipole", Field::DipoleBeam(dipole()), 0.0),
            (
                "rf_pseudo",
                Field::Rf(
                    RfField::new(&trap, &mg(), RfMode::Pseudopotential, Envelope::constant(0.8))
                        .unwrap(),
                ),
                0.0,
            ),
            (
                "rf_full",
                Field::Rf(
                    RfField::new(&trap, &mg(), RfMode::FullDrive, Envelope::constant(1.0)).unwrap(),
                ),
                3.1e-9, // a fixed phase of the drive
            ),
            ("dc", Field::Dc(DcField::new(&trap, &mg()).unwrap()), 0.0),
            (
                "dc_landscape",
                Field::Dc(DcField::new(&trap_landscape, &mg()).unwrap()),
                0.0,
            ),
            (
                "stray",
                Field::Stray(StrayForce {
                    force: [1e-20, -3e-21, 2e-21],
                }),
                0.0,
            ),
        ]
    }

    /// Central finite difference of the potential, the force oracle.
    fn fd_force(field: &Field, r: Vec3, t: f64, h: f64) -> Vec3 {
        let mut out = vec3::ZERO;
        for k in 0..3 {
            let mut rp = r;
            let mut rm = r;
            rp[k] += h;
            rm[k] -= h;
            out[k] = -(field.value(rp, t) - field.value(rm, t)) / (2.0 * h);
        }
        out
    }

    #[test]
    fn force_matches_finite_difference_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for (name, field, t) in fields_under_test() {
            for _ in 0..100 {
                let r = [
                    rng.gen_range(-12e-6..12e-6),
                    rng.gen_range(-12e-6..12e-6),
                    rng.gen_range(-12e-6..12e-6),
                ];
                let analytic = field.force(r, t);
                let fd = fd_force(&field, r, t, 2e-10);
                let scale = vec3::norm(analytic).max(1e-26);
                let err = vec3::norm(vec3::sub(analytic, fd)) / scale;
                assert!(err < 1e-6, "{name} at {r:?}: err {err:e}");
            }
        }
    }

    #[test]
    fn stray_force_is_constant_everywhere() {
        let f = StrayForce {
            force: [1e-20, 0.0, -5e-21],
        };
        assert_eq!(f.force([0.0; 3], 0.0), f.force([1e-3, -2e-5, 7.0], 99.0));
    }

    #[test]
    fn dipole_force_maximum_matches_grid_search() {
        let f = dipole();
        let expected = physics::max_radial_force(&beam(), &mg()).unwrap().exact;
        // grid search for the maximum radial force perpendicular to the beam
        let perp = [1.0 / f64::sqrt(2.0), 0.0, -1.0 / f64::sqrt(2.0)];
        let mut best: f64 = 0.0;
        for i in 0..40_000 {
            let rho = i as f64 * 1e-9;
            let fv = f.force(vec3::scale(perp, rho), 0.0);
            best = best.max(vec3::norm(fv));
        }
        assert!((best - expected).abs() / expected < 1e-4);
    }

    #[test]
    fn laplace_trace_vanishes_for_quadrupole_fields() {
        let trap = TrapConfiguration::reference();
        let rf_full =
            Field::Rf(RfField::new(&trap, &mg(), RfMode::FullDrive, Envelope::constant(1.0)).unwrap());
        let dc = Field::Dc(DcField::new(&trap, &mg()).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = 1e-7;
        for (field, t) in [(&rf_full, 2.7e-9), (&dc, 0.0)] {
            for _ in 0..100 {
                let r = [
                    rng.gen_range(-100e-6..100e-6),
                    rng.gen_range(-100e-6..100e-6),
                    rng.gen_range(-100e-6..100e-6),
                ];
                let mut curv = [0.0; 3];
                for k in 0..3 {
                    let mut rp = r;
                    let mut rm = r;
                    rp[k] += h;
                    rm[k] -= h;
                    curv[k] =
                        (field.value(rp, t) - 2.0 * field.value(r, t) + field.value(rm, t))
                            / (h * h);
                }
                let trace = curv[0] + curv[1] + curv[2];
                let max_curv = curv.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                assert!(
                    trace.abs() <= 1e-6 * max_curv.max(1e-30),
                    "trace {trace:e} vs {max_curv:e}"
                );
            }
        }
    }

    #[test]
    fn dc_landscape_barrier_position_and_depth() {
        let trap = TrapConfiguration::reference();
        let species = mg();
        let omega_z = 2.0 * PI * 38e3;
        let mut t = trap;
        t.omega_z = omega_z;
        t.landscape = Some(AxialLandscape::new(&species, omega_z, 100e-6));
        let dc = DcField::new(&t, &species).unwrap();
        let l = t.landscape.unwrap();
        let barrier = dc.value([0.0, 0.0, l.barrier_distance], 0.0) - dc.value(vec3::ZERO, 0.0);
        assert!((barrier - l.well_depth).abs() < 1e-9 * l.well_depth);
        // "on the order of 0.5 K"
        let kelvin = barrier / BOLTZMANN;
        assert!(kelvin > 0.3 && kelvin < 0.6, "{kelvin} K");
        // force vanishes at the barrier and pulls outward beyond it
        let fz_at = dc.force([0.0, 0.0, l.barrier_distance], 0.0)[2];
        assert!(fz_at.abs() < 1e-9 * l.well_depth / l.barrier_distance);
        let fz_beyond = dc.force([0.0, 0.0, 1.5 * l.barrier_distance], 0.0)[2];
        assert!(fz_beyond > 0.0);
        let v_beyond = dc.value([0.0, 0.0, 2.0 * l.barrier_distance], 0.0);
        assert!(v_beyond < dc.value([0.0, 0.0, l.barrier_distance], 0.0));
    }

    #[test]
    fn beam_at_45_degrees_confines_along_trap_axis() {
        let f = dipole();
        let h = 1e-7;
        let curv = (f.value([0.0, 0.0, h], 0.0) - 2.0 * f.value(vec3::ZERO, 0.0)
            + f.value([0.0, 0.0, -h], 0.0))
            / (h * h);
        // Nonzero (and confining) curvature projected on the RF z-axis.
        assert!(curv > 0.0);
        let radial = 4.0 * f.depth / (7e-6f64 * 7e-6);
        assert!(curv > 0.1 * radial, "curv {curv:e} vs radial {radial:e}");
    }

    #[test]
    fn compose_identity_and_linearity() {
        let trap = TrapConfiguration::reference();
        let a = Field::DipoleBeam(dipole());
        let b = Field::Dc(DcField::new(&trap, &mg()).unwrap());
        let single = CompositeField::compose(vec![a.clone()]).unwrap();
        let pair = CompositeField::compose(vec![a.clone(), b.clone()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let r = [
                rng.gen_range(-20e-6..20e-6),
                rng.gen_range(-20e-6..20e-6),
                rng.gen_range(-20e-6..20e-6),
            ];
            assert_eq!(single.value(r, 0.0), a.value(r, 0.0));
            assert_eq!(single.force(r, 0.0), a.force(r, 0.0));
            let sum = a.value(r, 0.0) + b.value(r, 0.0);
            assert!((pair.value(r, 0.0) - sum).abs() <= 1e-12 * sum.abs().max(1e-30));
        }
    }

    #[test]
    fn compose_empty_errors() {
        assert!(matches!(
            CompositeField::compose(vec![]),
            Err(Error::EmptyComposite)
        ));
    }

    #[test]
    fn zero_rf_envelope_leaves_static_fields_only() {
        let trap = TrapConfiguration::reference();
        let rf = Field::Rf(
            RfField::new(&trap, &mg(), RfMode::Pseudopotential, Envelope::constant(0.0)).unwrap(),
        );
        let dc = Field::Dc(DcField::new(&trap, &mg()).unwrap());
        let stray = Field::Stray(StrayForce {
            force: trap.stray_force,
        });
        let with_rf = CompositeField::compose(vec![
            Field::DipoleBeam(dipole()),
            rf,
            dc.clone(),
            stray.clone(),
        ])
        .unwrap();
        let without =
            CompositeField::compose(vec![Field::DipoleBeam(dipole()), dc, stray]).unwrap();
        let r = [3e-6, -2e-6, 5e-6];
        assert_eq!(with_rf.value(r, 1e-4), without.value(r, 1e-4));
        assert_eq!(with_rf.force(r, 1e-4), without.force(r, 1e-4));
    }
}

//! Gaussian dipole-trap beam geometry and drive parameters.

use crate::error::Error;
use crate::vec3::{self, Vec3};
use crate::Result;
use std::f64::consts::PI;

/// Direction-normalization tolerance on |direction| − 1.
const DIRECTION_TOL: f64 = 1e-9;

/// A focused Gaussian beam: the source of the optical potential.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianBeam {
    /// Optical power in the trap (W).
    pub power: f64,
    /// 1/e² intensity waist radius w₀ (m).
    pub waist_radius: f64,
    /// Detuning Δ from the atomic resonance (rad/s, signed; red is negative).
    pub detuning: f64,
    /// Laser wavelength (m).
    pub wavelength: f64,
    /// Propagation direction (unit vector).
    pub direction: Vec3,
    /// Focus position (m).
    pub focus: Vec3,
}

impl GaussianBeam {
    /// Beam crossing the trap z-axis at 45° in the x–z plane,
    /// focused on the origin.
    pub fn at_45_degrees(power: f64, waist_radius: f64, detuning: f64, wavelength: f64) -> Self {
        let s = 1.0 / f64::sqrt(2.0);
        GaussianBeam {
            power,
            waist_radius,
            detuning,
            wavelength,
            direction: [s, 0.0, s],
            focus: vec3::ZERO,
        }
    }

    /// Beam crossing the trap z-axis at `angle` radians in the x–z plane.
    pub fn at_angle(
        power: f64,
        waist_radius: f64,
        detuning: f64,
        wavelength: f64,
        angle: f64,
    ) -> Self {
        GaussianBeam {
            power,
            waist_radius,
            detuning,
            wavelength,
            direction: [angle.sin(), 0.0, angle.cos()],
            focus: vec3::ZERO,
        }
    }

    /// Rayleigh range z_R = πw₀²/λ (m).
    pub fn rayleigh_range(&self) -> f64 {
        PI * self.waist_radius * self.waist_radius / self.wavelength
    }

    /// Peak intensity I₀ = 2P/(πw₀²) (W/m²).
    pub fn peak_intensity(&self) -> f64 {
        2.0 * self.power / (PI * self.waist_radius * self.waist_radius)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.power >= 0.0 && self.power.is_finite()) {
            return Err(Error::invalid("beam.power", "must be >= 0"));
        }
        if !(self.waist_radius > 0.0 && self.waist_radius.is_finite()) {
            return Err(Error::invalid("beam.waist_radius", "must be > 0"));
        }
        if !(self.wavelength > 0.0 && self.wavelength.is_finite()) {
            return Err(Error::invalid("beam.wavelength", "must be > 0"));
        }
        if !self.detuning.is_finite() {
            return Err(Error::invalid("beam.detuning", "must be finite"));
        }
        if (vec3::norm(self.direction) - 1.0).abs() > DIRECTION_TOL {
            return Err(Error::invalid(
                "beam.direction",
                format!("must be a unit vector, |d| = {}", vec3::norm(self.direction)),
            ));
        }
        if !vec3::is_finite(self.focus) {
            return Err(Error::invalid("beam.focus", "must be finite"));
        }
        Ok(())
    }

    /// Validation for potential/rate evaluation, which additionally
    /// requires a nonzero detuning.
    pub fn validate_for_evaluation(&self) -> Result<()> {
        self.validate()?;
        if self.detuning == 0.0 {
            return Err(Error::invalid(
                "beam.detuning",
                "must be nonzero to evaluate the optical potential",
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forty_five_degree_direction_is_unit() {
        let b = GaussianBeam::at_45_degrees(0.19, 7e-6, -1.0e12, 280e-9);
        b.validate().unwrap();
        assert!((vec3::norm(b.direction) - 1.0).abs() < 1e-12);
        assert!((b.direction[0] - b.direction[2]).abs() < 1e-15);
    }

    #[test]
    fn zero_detuning_rejected_for_evaluation() {
        let b = GaussianBeam::at_45_degrees(0.19, 7e-6, 0.0, 280e-9);
        assert!(b.validate().is_ok());
        assert!(b.validate_for_evaluation().is_err());
    }

    #[test]
    fn rayleigh_range_matches_formula() {
        let b = GaussianBeam::at_45_degrees(0.275, 7e-6, -1.0e12, 280e-9);
        assert!((b.rayleigh_range() - 5.497787e-4).abs() / 5.497787e-4 < 1e-5);
    }
}

//! Ion species: mass and optical-transition constants.

use crate::constants::{ATOMIC_MASS, ELEMENTARY_CHARGE, HBAR};
use crate::error::Error;
use crate::Result;
use std::f64::consts::PI;

/// Mass and optical-transition constants of the trapped ion.
#[derive(Debug, Clone, PartialEq)]
pub struct IonSpecies {
    /// Ion mass (kg).
    pub mass: f64,
    /// Wavelength of the trapping/scattering transition (m).
    pub transition_wavelength: f64,
    /// Natural linewidth of that transition (rad/s).
    pub linewidth: f64,
    /// Ion charge (C).
    pub charge: f64,
    /// Human-readable label.
    pub label: String,
}

impl IonSpecies {
    /// ²⁴Mg⁺ with the S₁/₂ ↔ P₃/₂ transition at 280 nm,
    /// Γ = 2π × 41.8 MHz. Mass taken as 24 u.
    pub fn mg24() -> Self {
        IonSpecies {
            mass: 24.0 * ATOMIC_MASS,
            transition_wavelength: 280e-9,
            linewidth: 2.0 * PI * 41.8e6,
            charge: ELEMENTARY_CHARGE,
            label: "24Mg+".into(),
        }
    }

    /// Transition wavenumber k = 2π/λ₀ (1/m).
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.transition_wavelength
    }

    /// Single-photon momentum ħk (kg m/s).
    pub fn photon_momentum(&self) -> f64 {
        HBAR * self.wavenumber()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("mass", self.mass),
            ("transition_wavelength", self.transition_wavelength),
            ("linewidth", self.linewidth),
            ("charge", self.charge),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(
                    "species",
                    format!("{name} must be strictly positive, got {v:e}"),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mg24_is_valid() {
        let s = IonSpecies::mg24();
        s.validate().unwrap();
        assert!((s.mass - 3.98529e-26).abs() / s.mass < 1e-4);
    }

    #[test]
    fn nonpositive_field_rejected() {
        let mut s = IonSpecies::mg24();
        s.linewidth = 0.0;
        assert!(s.validate().is_err());
    }
}

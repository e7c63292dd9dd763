//! RF drive, DC well, and stray-force parameters of the Paul trap.

use crate::error::Error;
use crate::species::IonSpecies;
use crate::vec3::{self, Vec3};
use crate::Result;

/// Asymmetric axial potential landscape produced by contact potentials on
/// the trap electrodes: a harmonic well whose quartic correction creates a
/// barrier at finite distance, beyond which the DC fields defocus.
///
/// Modeled as U(z) = ½mω_z²z²·(1 − z²/(2 z_b²)); the barrier then sits at
/// z_b with height ¼mω_z²z_b² above the well bottom, so the depth is fixed
/// by (ω_z, z_b).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxialLandscape {
    /// Distance of the potential maximum from the well center (m).
    pub barrier_distance: f64,
    /// Well depth U(z_b) − U(0) (J), derived from ω_z and z_b.
    pub well_depth: f64,
}

impl AxialLandscape {
    /// Landscape for a well of axial frequency `omega_z` with its barrier at
    /// `barrier_distance`; the depth follows from the harmonic-minus-quartic
    /// form.
    pub fn new(species: &IonSpecies, omega_z: f64, barrier_distance: f64) -> Self {
        let well_depth =
            0.25 * species.mass * omega_z * omega_z * barrier_distance * barrier_distance;
        AxialLandscape {
            barrier_distance,
            well_depth,
        }
    }
}

/// All non-optical fields of the trap: RF drive, DC well, stray force.
#[derive(Debug, Clone, PartialEq)]
pub struct TrapConfiguration {
    /// RF drive frequency Ω_RF (rad/s).
    pub omega_rf: f64,
    /// Full-amplitude radial secular frequencies (rad/s).
    pub omega_x: f64,
    pub omega_y: f64,
    /// DC axial frequency ω_z (rad/s).
    pub omega_z: f64,
    /// Minimal electrode–ion distance R₀ (m).
    pub electrode_distance: f64,
    /// Optional axial landscape from contact potentials.
    pub landscape: Option<AxialLandscape>,
    /// Residual uniform stray force (N).
    pub stray_force: Vec3,
}

impl TrapConfiguration {
    /// The published operating point: Ω_RF = 2π×56 MHz, ω_x,y = 2π×900 kHz,
    /// ω_z = 2π×45 kHz, R₀ = 0.8 mm, stray force 10⁻²⁰ N, no landscape.
    pub fn reference() -> Self {
        use std::f64::consts::PI;
        TrapConfiguration {
            omega_rf: 2.0 * PI * 56e6,
            omega_x: 2.0 * PI * 900e3,
            omega_y: 2.0 * PI * 900e3,
            omega_z: 2.0 * PI * 45e3,
            electrode_distance: 0.8e-3,
            landscape: None,
            stray_force: [1e-20, 0.0, 0.0],
        }
    }

    /// Mathieu q of the x axis at full drive, lowest order:
    /// q = 2√2·ω_x/Ω_RF.
    pub fn q_full(&self) -> f64 {
        2.0 * f64::sqrt(2.0) * self.omega_x / self.omega_rf
    }

    /// Effective harmonic frequencies of the combined RF-pseudopotential
    /// plus DC well at full drive: the DC well defocuses each radial axis
    /// with curvature −½mω_z².
    pub fn combined_well_frequencies(&self) -> Result<[f64; 3]> {
        let half = 0.5 * self.omega_z * self.omega_z;
        let wx2 = self.omega_x * self.omega_x - half;
        let wy2 = self.omega_y * self.omega_y - half;
        if wx2 <= 0.0 || wy2 <= 0.0 {
            return Err(Error::invalid(
                "trap.omega_z",
                "DC defocusing exceeds the radial RF confinement",
            ));
        }
        Ok([wx2.sqrt(), wy2.sqrt(), self.omega_z])
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("trap.omega_rf", self.omega_rf),
            ("trap.omega_x", self.omega_x),
            ("trap.omega_y", self.omega_y),
            ("trap.electrode_distance", self.electrode_distance),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid("trap", format!("{name} must be > 0, got {v:e}")));
            }
        }
        if !(self.omega_z >= 0.0 && self.omega_z.is_finite()) {
            return Err(Error::invalid("trap.omega_z", "must be >= 0"));
        }
        if let Some(l) = &self.landscape {
            if !(l.barrier_distance > 0.0 && l.barrier_distance.is_finite()) {
                return Err(Error::invalid("trap.landscape", "barrier distance must be > 0"));
            }
        }
        if !vec3::is_finite(self.stray_force) {
            return Err(Error::invalid("trap.stray_force", "must be finite"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_q_parameter() {
        let t = TrapConfiguration::reference();
        assert!((t.q_full() - 0.045457).abs() < 1e-5);
    }

    #[test]
    fn landscape_depth_is_order_half_kelvin() {
        use crate::constants::BOLTZMANN;
        use std::f64::consts::PI;
        let species = IonSpecies::mg24();
        let l = AxialLandscape::new(&species, 2.0 * PI * 38e3, 100e-6);
        let depth_k = l.well_depth / BOLTZMANN;
        assert!(depth_k > 0.3 && depth_k < 0.6, "depth {depth_k} K");
    }

    #[test]
    fn combined_well_frequencies_reduce_radial() {
        let t = TrapConfiguration::reference();
        let w = t.combined_well_frequencies().unwrap();
        assert!(w[0] < t.omega_x);
        assert!((w[2] - t.omega_z).abs() == 0.0);
    }
}

//! Closed-form derived quantities of the optical dipole trap and the RF
//! trap, in the two-level rotating-wave approximation.
//!
//! Conventions: `dipole_potential_depth` returns |U₀|; the attractive sign
//! for red detuning is carried by the field objects in [`crate::potentials`].

use crate::beam::GaussianBeam;
use crate::constants::{HBAR, PLANCK, SPEED_OF_LIGHT};
use crate::error::Error;
use crate::species::IonSpecies;
use crate::trap::TrapConfiguration;
use crate::Result;
use std::f64::consts::PI;

/// Saturation intensity I_sat = πhcΓ/(3λ₀³) (W/m²).
pub fn saturation_intensity(species: &IonSpecies) -> f64 {
    let lam = species.transition_wavelength;
    PI * PLANCK * SPEED_OF_LIGHT * species.linewidth / (3.0 * lam * lam * lam)
}

/// Depth of the optical potential |U₀| = (ħΓ²/8|Δ|)·(I₀/I_sat) (J).
///
/// Errors on zero detuning.
pub fn dipole_potential_depth(beam: &GaussianBeam, species: &IonSpecies) -> Result<f64> {
    if beam.detuning == 0.0 {
        return Err(Error::invalid("beam.detuning", "zero detuning"));
    }
    let g = species.linewidth;
    let saturation = beam.peak_intensity() / saturation_intensity(species);
    Ok(HBAR * g * g / (8.0 * beam.detuning.abs()) * saturation)
}

/// Peak-intensity photon scattering rate Γ_s = (Γ/8)(Γ/Δ)²·(I₀/I_sat) (1/s).
///
/// The position-dependent rate is this value scaled by the local relative
/// intensity. Errors on zero detuning.
pub fn scattering_rate(beam: &GaussianBeam, species: &IonSpecies) -> Result<f64> {
    if beam.detuning == 0.0 {
        return Err(Error::invalid("beam.detuning", "zero detuning"));
    }
    let g = species.linewidth;
    let ratio = g / beam.detuning;
    let saturation = beam.peak_intensity() / saturation_intensity(species);
    Ok(g / 8.0 * ratio * ratio * saturation)
}

/// Single-photon recoil energy E_r = ħ²k²/2m (J).
pub fn recoil_energy(species: &IonSpecies) -> f64 {
    let p = species.photon_momentum();
    p * p / (2.0 * species.mass)
}

/// Harmonic trap frequencies at the beam focus:
/// ω_rad = √(4U₀/(m w₀²)) perpendicular to the beam and
/// ω_k = √(2U₀/(m z_R²)) along it (rad/s).
///
/// Errors on zero power (the bottom of a zero-depth well has no frequency).
pub fn trap_frequencies(beam: &GaussianBeam, species: &IonSpecies) -> Result<(f64, f64)> {
    if beam.power <= 0.0 {
        return Err(Error::invalid("beam.power", "zero power"));
    }
    let u0 = dipole_potential_depth(beam, species)?;
    let w0 = beam.waist_radius;
    let zr = beam.rayleigh_range();
    let omega_rad = (4.0 * u0 / (species.mass * w0 * w0)).sqrt();
    let omega_axial = (2.0 * u0 / (species.mass * zr * zr)).sqrt();
    Ok((omega_rad, omega_axial))
}

/// Maximum radial force of the Gaussian beam, in both conventions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialForce {
    /// 2U₀/w₀: the force scale without the Gaussian factor (N).
    pub scale: f64,
    /// (2U₀/w₀)·e^(−1/2): the true maximum of |∂_r U|, at r = w₀/2 (N).
    pub exact: f64,
}

/// Maximum force perpendicular to the beam.
pub fn max_radial_force(beam: &GaussianBeam, species: &IonSpecies) -> Result<RadialForce> {
    let u0 = dipole_potential_depth(beam, species)?;
    let scale = 2.0 * u0 / beam.waist_radius;
    Ok(RadialForce {
        scale,
        exact: scale * (-0.5f64).exp(),
    })
}

/// Zero-initial-temperature recoil-heating escape time
/// τ = U₀/(Γ_s·2E_r) (s).
///
/// Errors when the scattering rate vanishes (zero power).
pub fn recoil_lifetime_estimate(beam: &GaussianBeam, species: &IonSpecies) -> Result<f64> {
    let gs = scattering_rate(beam, species)?;
    if gs <= 0.0 {
        return Err(Error::invalid("beam.power", "zero scattering rate"));
    }
    let u0 = dipole_potential_depth(beam, species)?;
    Ok(u0 / (gs * 2.0 * recoil_energy(species)))
}

/// Order-of-magnitude radial depth of the RF pseudopotential,
/// ½mω_rad,RF²R₀² (J).
pub fn rf_trap_depth_estimate(trap: &TrapConfiguration, species: &IonSpecies) -> f64 {
    let w = trap.omega_x;
    let r0 = trap.electrode_distance;
    0.5 * species.mass * w * w * r0 * r0
}

/// All derived quantities of one beam/trap configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct DipoleTrapDerived {
    /// Saturation intensity (W/m²).
    pub saturation_intensity: f64,
    /// Peak intensity (W/m²).
    pub peak_intensity: f64,
    /// Optical potential depth |U₀| (J).
    pub depth: f64,
    /// Radial trap frequency (rad/s).
    pub omega_radial: f64,
    /// Trap frequency along the beam (rad/s).
    pub omega_axial: f64,
    /// Peak scattering rate (1/s).
    pub scattering_rate: f64,
    /// Recoil energy (J).
    pub recoil_energy: f64,
    /// Maximum radial force (N), both conventions.
    pub radial_force: RadialForce,
    /// Recoil-heating lifetime estimate (s); `None` at zero power where the
    /// scattering rate vanishes.
    pub lifetime: Option<f64>,
    /// RF radial trap depth estimate (J).
    pub rf_depth: f64,
}

impl DipoleTrapDerived {
    /// Evaluate every derived quantity. Zero power is allowed and yields
    /// zero depth, frequencies, rate and force, with an undefined lifetime.
    pub fn compute(
        beam: &GaussianBeam,
        species: &IonSpecies,
        trap: &TrapConfiguration,
    ) -> Result<Self> {
        species.validate()?;
        beam.validate_for_evaluation()?;
        trap.validate()?;
        let depth = dipole_potential_depth(beam, species)?;
        let (omega_radial, omega_axial) = if beam.power > 0.0 {
            trap_frequencies(beam, species)?
        } else {
            (0.0, 0.0)
        };
        let gs = scattering_rate(beam, species)?;
        let lifetime = if gs > 0.0 {
            Some(recoil_lifetime_estimate(beam, species)?)
        } else {
            None
        };
        Ok(DipoleTrapDerived {
            saturation_intensity: saturation_intensity(species),
            peak_intensity: beam.peak_intensity(),
            depth,
            omega_radial,
            omega_axial,
            scattering_rate: gs,
            recoil_energy: recoil_energy(species),
            radial_force: max_radial_force(beam, species)?,
            lifetime,
            rf_depth: rf_trap_depth_estimate(trap, species),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::BOLTZMANN;

    fn mg() -> IonSpecies {
        IonSpecies::mg24()
    }

    /// Beam of the initial setup: 275 mW, w₀ = 7 µm, Δ = −2π×300 GHz.
    fn beam_setup() -> GaussianBeam {
        GaussianBeam::at_45_degrees(0.275, 7e-6, -2.0 * PI * 300e9, 280e-9)
    }

    /// Beam of the lifetime measurement: 190 mW, Δ = −2π×275 GHz.
    fn beam_lifetime() -> GaussianBeam {
        GaussianBeam::at_45_degrees(0.190, 7e-6, -2.0 * PI * 275e9, 280e-9)
    }

    fn rel_err(value: f64, expected: f64) -> f64 {
        (value - expected).abs() / expected.abs()
    }

    #[test]
    fn depth_matches_quoted_values() {
        let u1 = dipole_potential_depth(&beam_setup(), &mg()).unwrap();
        assert!(rel_err(u1, BOLTZMANN * 51e-3) < 0.10, "U0 = {u1:e}");
        let u2 = dipole_potential_depth(&beam_lifetime(), &mg()).unwrap();
        assert!(rel_err(u2, BOLTZMANN * 38e-3) < 0.10, "U0 = {u2:e}");
    }

    #[test]
    fn depth_zero_power_is_zero() {
        let mut b = beam_setup();
        b.power = 0.0;
        assert_eq!(dipole_potential_depth(&b, &mg()).unwrap(), 0.0);
    }

    #[test]
    fn depth_zero_detuning_errors() {
        let mut b = beam_setup();
        b.detuning = 0.0;
        assert!(dipole_potential_depth(&b, &mg()).is_err());
        assert!(scattering_rate(&b, &mg()).is_err());
    }

    #[test]
    fn scattering_rate_matches_quoted_value() {
        let gs = scattering_rate(&beam_lifetime(), &mg()).unwrap();
        assert!(rel_err(gs, 860e3) < 0.20, "Gs = {gs:e}");
    }

    #[test]
    fn scattering_rate_detuning_scaling_is_exact() {
        let b = beam_lifetime();
        let mut b2 = b.clone();
        b2.detuning *= 2.0;
        let ratio = scattering_rate(&b, &mg()).unwrap() / scattering_rate(&b2, &mg()).unwrap();
        assert!((ratio - 4.0).abs() < 1e-12);
    }

    #[test]
    fn recoil_energy_values() {
        let er = recoil_energy(&mg());
        // Independent evaluation of ħ²k²/2m gives E_r = 7.0260e-29 J
        // (k_B × 5.089 µK).
        assert!(rel_err(er, 7.0260e-29) < 1e-3, "Er = {er:e}");
        assert!(rel_err(2.0 * er, BOLTZMANN * 10e-6) < 0.10);
        let mut heavy = mg();
        heavy.mass *= 2.0;
        assert!((recoil_energy(&heavy) - er / 2.0).abs() / er < 1e-15);
    }

    #[test]
    fn trap_frequencies_match_quoted_values() {
        let (wr1, wk1) = trap_frequencies(&beam_setup(), &mg()).unwrap();
        assert!(rel_err(wr1, 2.0 * PI * 192e3) < 0.10, "w_rad = {wr1:e}");
        assert!(rel_err(wk1, 2.0 * PI * 2e3) < 0.25, "w_k = {wk1:e}");
        let (wr2, _) = trap_frequencies(&beam_lifetime(), &mg()).unwrap();
        assert!(rel_err(wr2, 2.0 * PI * 165e3) < 0.10, "w_rad = {wr2:e}");
    }

    #[test]
    fn trap_frequencies_sqrt_power_scaling() {
        let b = beam_setup();
        let mut b4 = b.clone();
        b4.power *= 4.0;
        let (wr, wk) = trap_frequencies(&b, &mg()).unwrap();
        let (wr4, wk4) = trap_frequencies(&b4, &mg()).unwrap();
        assert!((wr4 / wr - 2.0).abs() < 1e-12);
        assert!((wk4 / wk - 2.0).abs() < 1e-12);
    }

    #[test]
    fn trap_frequencies_zero_power_errors() {
        let mut b = beam_setup();
        b.power = 0.0;
        assert!(trap_frequencies(&b, &mg()).is_err());
    }

    #[test]
    fn radial_force_matches_quoted_value() {
        let f = max_radial_force(&beam_setup(), &mg()).unwrap();
        assert!(rel_err(f.scale, 2e-19) < 0.15, "F = {:e}", f.scale);
        // Grid search over |∂_r U₀ e^(−2r²/w₀²)| puts the true maximum at
        // 1.2001e-19 N (r = w₀/2).
        assert!(rel_err(f.exact, 1.2001e-19) < 1e-3, "F = {:e}", f.exact);
    }

    #[test]
    fn lifetime_matches_quoted_value() {
        let tau = recoil_lifetime_estimate(&beam_lifetime(), &mg()).unwrap();
        assert!(rel_err(tau, 4e-3) < 0.25, "tau = {tau:e}");
    }

    #[test]
    fn lifetime_power_invariance_and_detuning_scaling() {
        let b = beam_lifetime();
        let tau = recoil_lifetime_estimate(&b, &mg()).unwrap();
        let mut b2 = b.clone();
        b2.power *= 3.0;
        let tau_p = recoil_lifetime_estimate(&b2, &mg()).unwrap();
        assert!((tau_p / tau - 1.0).abs() < 1e-12);
        let mut b3 = b.clone();
        b3.detuning *= 2.0;
        let tau_d = recoil_lifetime_estimate(&b3, &mg()).unwrap();
        assert!((tau_d / tau - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rf_depth_matches_quoted_order() {
        let trap = TrapConfiguration::reference();
        let u = rf_trap_depth_estimate(&trap, &mg());
        // Direct evaluation of ½mω²R₀² gives k_B × 2.954e4 K.
        assert!(rel_err(u, BOLTZMANN * 2.954e4) < 1e-3, "U = {u:e}");
        let ratio = u / (BOLTZMANN * 1e4);
        assert!(ratio < 3.0 && ratio > 1.0 / 3.0);
        let mut t0 = trap;
        t0.omega_x = 0.0;
        assert_eq!(rf_trap_depth_estimate(&t0, &mg()), 0.0);
    }

    #[test]
    fn derived_struct_is_self_consistent() {
        let d = DipoleTrapDerived::compute(&beam_setup(), &mg(), &TrapConfiguration::reference())
            .unwrap();
        let m = mg().mass;
        let w0 = beam_setup().waist_radius;
        let u_back = d.omega_radial * d.omega_radial * m * w0 * w0 / 4.0;
        assert!(rel_err(u_back, d.depth) < 1e-12);
        assert!(d.lifetime.unwrap() > 0.0);
    }

    #[test]
    fn derived_struct_zero_power() {
        let mut b = beam_setup();
        b.power = 0.0;
        let d = DipoleTrapDerived::compute(&b, &mg(), &TrapConfiguration::reference()).unwrap();
        assert_eq!(d.depth, 0.0);
        assert_eq!(d.omega_radial, 0.0);
        assert_eq!(d.scattering_rate, 0.0);
        assert!(d.lifetime.is_none());
    }
}

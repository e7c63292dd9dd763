//! Markovian heating model of the trapping probability.
//!
//! A particle in a one-dimensional well of depth U₀ = ε·P_trap at inverse
//! temperature β leaves with probability ≈ exp(−βU₀) per escape attempt;
//! attempts occur at frequency Ω_M = c·√P_trap, and the temperature rises
//! linearly, (k_B β(t))⁻¹ = T₀ + γ·P_trap·t. The survival probability
//! after a hold T then is
//!
//! P(T) = C₀ · exp(−∫₀ᵀ Ω_M · exp(−(ε/γ) / ((T₀/γ)/P_trap + t)) dt),
//!
//! parameterized by the four fit quantities ε/γ (s), T₀/γ (W·s),
//! Ω_M/√P_trap (s⁻¹W^(−1/2)) and the pre-factor C₀.

use crate::error::Error;
use crate::heating::quad;
use crate::Result;

/// Relative tolerance of the survival-curve quadrature.
const QUAD_REL_TOL: f64 = 1e-8;

/// Relative bisection tolerance of the lifetime solver.
const LIFETIME_REL_TOL: f64 = 1e-4;

/// The four parameters of the heating model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MarkovModelParams {
    /// ε/γ (s): well depth per unit heating rate.
    pub eps_over_gamma: f64,
    /// T₀/γ (W·s): initial temperature per unit heating rate.
    pub t0_over_gamma: f64,
    /// Ω_M/√P_trap (s⁻¹·W^(−1/2)): escape-attempt frequency per √power.
    pub omega_per_sqrt_p: f64,
    /// Pre-factor C₀ ∈ [0, 1] absorbing improper initialization.
    pub c0: f64,
}

impl MarkovModelParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("eps_over_gamma", self.eps_over_gamma),
            ("t0_over_gamma", self.t0_over_gamma),
            ("omega_per_sqrt_p", self.omega_per_sqrt_p),
            ("c0", self.c0),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(
                    "model",
                    format!("{name} must be >= 0, got {v:e}"),
                ));
            }
        }
        if self.c0 > 1.0 {
            return Err(Error::invalid("model", "c0 must be <= 1"));
        }
        Ok(())
    }

    /// Escape-attempt frequency Ω_M at a given beam power (1/s).
    pub fn attempt_rate(&self, p_trap: f64) -> f64 {
        self.omega_per_sqrt_p * p_trap.sqrt()
    }
}

/// Accumulated escape exponent ∫₀ᵀ Ω_M exp(−βU₀) dt.
pub fn escape_exponent(t_dipole: f64, p_trap: f64, params: &MarkovModelParams) -> Result<f64> {
    params.validate()?;
    if !(t_dipole >= 0.0 && t_dipole.is_finite()) {
        return Err(Error::invalid("t_dipole", "must be >= 0 and finite"));
    }
    if !(p_trap > 0.0 && p_trap.is_finite()) {
        return Err(Error::invalid("p_trap", "must be > 0 and finite"));
    }
    let omega = params.attempt_rate(p_trap);
    if omega == 0.0 || t_dipole == 0.0 {
        return Ok(0.0);
    }
    let depth_time = params.eps_over_gamma;
    if depth_time == 0.0 {
        // zero well depth: every attempt succeeds
        return Ok(omega * t_dipole);
    }
    let warmup = params.t0_over_gamma / p_trap;
    let integral = quad::integrate(
        |t| (-depth_time / (warmup + t)).exp(),
        0.0,
        t_dipole,
        QUAD_REL_TOL,
    )?;
    Ok(omega * integral)
}

/// Probability that the ion is still trapped after `t_dipole` at power
/// `p_trap`. Zero power returns 0 by convention (no trap at all).
pub fn survival_probability(
    t_dipole: f64,
    p_trap: f64,
    params: &MarkovModelParams,
) -> Result<f64> {
    params.validate()?;
    if !(p_trap >= 0.0 && p_trap.is_finite()) {
        return Err(Error::invalid("p_trap", "must be >= 0 and finite"));
    }
    if p_trap == 0.0 {
        return Ok(0.0);
    }
    Ok(params.c0 * (-escape_exponent(t_dipole, p_trap, params)?).exp())
}

/// 1/e lifetime of the normalized survival curve: the τ solving
/// P(τ)/C₀ = e⁻¹, located by bisection on [0, t_max].
///
/// Errors if the curve never reaches 1/e within `t_max` (callers pass ten
/// times their data range).
pub fn lifetime(params: &MarkovModelParams, p_trap: f64, t_max: f64) -> Result<f64> {
    params.validate()?;
    if !(p_trap > 0.0) {
        return Err(Error::invalid("p_trap", "lifetime requires p_trap > 0"));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::invalid("t_max", "must be > 0 and finite"));
    }
    if escape_exponent(t_max, p_trap, params)? < 1.0 {
        return Err(Error::LifetimeNotReached { t_max });
    }
    let mut lo = 0.0;
    let mut hi = t_max;
    while hi - lo > LIFETIME_REL_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if escape_exponent(mid, p_trap, params)? < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

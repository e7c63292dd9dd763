//! The seven-phase switching sequence of one trapping attempt.

use crate::dynamics::envelope::{Envelope, SegmentShape};
use crate::error::Error;
use crate::Result;

/// Programmed shape of the RF amplitude ramps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RampShape {
    Linear,
    Cosine,
}

/// Ordered phase durations of the handoff protocol:
/// cooling off → dipole on → RF ramp down → hold (T_dipole) →
/// RF ramp up → dipole off.
///
/// The dipole beam is powered from the start of the `dipole_on` phase until
/// the start of the `dipole_off` phase. The RF amplitude follows the
/// programmed ramp low-pass filtered by the helical resonator's ring-down
/// time.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolTimeline {
    pub cooling_off: f64,
    pub dipole_on: f64,
    pub rf_ramp_down: f64,
    /// Dipole trap duration T_dipole.
    pub hold: f64,
    pub rf_ramp_up: f64,
    pub dipole_off: f64,
    pub ramp_shape: RampShape,
    /// Resonator 1/e ring-down time T_rd.
    pub ring_down_time: f64,
}

impl ProtocolTimeline {
    /// Protocol with the published defaults: 50 µs ramps, 0.5 µs ring-down,
    /// instantaneous laser switches.
    pub fn with_hold(hold: f64) -> Self {
        ProtocolTimeline {
            cooling_off: 0.0,
            dipole_on: 0.0,
            rf_ramp_down: 50e-6,
            hold,
            rf_ramp_up: 50e-6,
            dipole_off: 0.0,
            ramp_shape: RampShape::Linear,
            ring_down_time: 0.5e-6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("cooling_off", self.cooling_off),
            ("dipole_on", self.dipole_on),
            ("rf_ramp_down", self.rf_ramp_down),
            ("hold", self.hold),
            ("rf_ramp_up", self.rf_ramp_up),
            ("dipole_off", self.dipole_off),
            ("ring_down_time", self.ring_down_time),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(
                    "protocol",
                    format!("{name} must be >= 0, got {v:e}"),
                ));
            }
        }
        Ok(())
    }

    pub fn t_dipole_on(&self) -> f64 {
        self.cooling_off
    }

    pub fn t_ramp_down_start(&self) -> f64 {
        self.cooling_off + self.dipole_on
    }

    pub fn t_hold_start(&self) -> f64 {
        self.t_ramp_down_start() + self.rf_ramp_down
    }

    pub fn t_hold_end(&self) -> f64 {
        self.t_hold_start() + self.hold
    }

    pub fn t_ramp_up_end(&self) -> f64 {
        self.t_hold_end() + self.rf_ramp_up
    }

    pub fn t_end(&self) -> f64 {
        self.t_ramp_up_end() + self.dipole_off
    }

    /// Time window during which the dipole beam is powered.
    pub fn dipole_window(&self) -> (f64, f64) {
        (self.t_dipole_on(), self.t_ramp_up_end())
    }

    fn ramp(&self, from: f64, to: f64) -> SegmentShape {
        match self.ramp_shape {
            RampShape::Linear => SegmentShape::Linear { from, to },
            RampShape::Cosine => SegmentShape::Cosine { from, to },
        }
    }

    /// RF amplitude envelope including the resonator response.
    pub fn rf_envelope(&self) -> Envelope {
        Envelope::piecewise(
            0.0,
            &[
                (self.t_ramp_down_start(), SegmentShape::Constant(1.0)),
                (self.rf_ramp_down, self.ramp(1.0, 0.0)),
                (self.hold, SegmentShape::Constant(0.0)),
                (self.rf_ramp_up, self.ramp(0.0, 1.0)),
                (self.dipole_off, SegmentShape::Constant(1.0)),
            ],
            self.ring_down_time,
        )
    }
}

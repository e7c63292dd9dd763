//! RF amplitude envelopes: programmed ramp shapes and their response after
//! the helical resonator, modeled as a first-order low-pass stage with the
//! resonator's 1/e ring-down time.
//!
//! The filtered envelope is evaluated in closed form per segment, so it is
//! exact (no ODE stepping) and cheap to query at arbitrary times.

use std::f64::consts::PI;

/// Programmed input on one time segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentShape {
    Constant(f64),
    /// Linear ramp from `from` to `to` over the segment.
    Linear { from: f64, to: f64 },
    /// Half-cosine ramp from `from` to `to` over the segment.
    Cosine { from: f64, to: f64 },
}

impl SegmentShape {
    /// Programmed value at local time `s` within a segment of duration `d`.
    fn programmed(&self, s: f64, d: f64) -> f64 {
        match *self {
            SegmentShape::Constant(c) => c,
            SegmentShape::Linear { from, to } => {
                if d <= 0.0 {
                    to
                } else {
                    from + (to - from) * (s / d)
                }
            }
            SegmentShape::Cosine { from, to } => {
                if d <= 0.0 {
                    to
                } else {
                    let mid = 0.5 * (from + to);
                    let amp = 0.5 * (from - to);
                    mid + amp * (PI * s / d).cos()
                }
            }
        }
    }

    fn end_value(&self) -> f64 {
        match *self {
            SegmentShape::Constant(c) => c,
            SegmentShape::Linear { to, .. } | SegmentShape::Cosine { to, .. } => to,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Segment {
    start: f64,
    duration: f64,
    shape: SegmentShape,
    /// Filter output at the start of the segment.
    y_start: f64,
}

/// Piecewise envelope passed through a first-order low-pass filter
/// ẏ = (u − y)/τ. With τ = 0 the programmed envelope is returned
/// unchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    segments: Vec<Segment>,
    /// Value before the first segment (filter assumed settled).
    before: f64,
    tau: f64,
}

impl Envelope {
    /// Envelope that is `value` for all times.
    pub fn constant(value: f64) -> Self {
        Envelope {
            segments: Vec::new(),
            before: value,
            tau: 0.0,
        }
    }

    /// Build from contiguous segments starting at `t0`. Segment durations
    /// must be nonnegative; the filter starts settled at the first
    /// programmed value.
    pub fn piecewise(t0: f64, shapes: &[(f64, SegmentShape)], ring_down_time: f64) -> Self {
        let tau = ring_down_time.max(0.0);
        let before = shapes
            .first()
            .map(|(d, s)| s.programmed(0.0, *d))
            .unwrap_or(0.0);
        let mut segments = Vec::with_capacity(shapes.len());
        let mut t = t0;
        let mut y = before;
        for &(d, shape) in shapes {
            segments.push(Segment {
                start: t,
                duration: d,
                shape,
                y_start: y,
            });
            y = filtered_value(shape, d, d, y, tau);
            t += d;
        }
        Envelope {
            segments,
            before,
            tau,
        }
    }

    /// Envelope value at time `t`, in [0, 1] for ramps between 0 and 1.
    pub fn at(&self, t: f64) -> f64 {
        let Some(first) = self.segments.first() else {
            return self.before;
        };
        if t < first.start {
            return self.before;
        }
        // Per-phase segment counts are tiny; a linear scan beats binary
        // search here.
        let mut last = first;
        for seg in &self.segments {
            if t < seg.start + seg.duration {
                return filtered_value(seg.shape, t - seg.start, seg.duration, seg.y_start, self.tau);
            }
            last = seg;
        }
        // Past the end: relax toward the final programmed value.
        let u_end = last.shape.end_value();
        let y_end = filtered_value(last.shape, last.duration, last.duration, last.y_start, self.tau);
        if self.tau == 0.0 {
            u_end
        } else {
            u_end + (y_end - u_end) * (-(t - (last.start + last.duration)) / self.tau).exp()
        }
    }
}

/// Closed-form response of ẏ = (u − y)/τ at local time `s` in a segment of
/// duration `d` with initial value `y0`.
fn filtered_value(shape: SegmentShape, s: f64, d: f64, y0: f64, tau: f64) -> f64 {
    if tau == 0.0 {
        return shape.programmed(s, d);
    }
    let decay = (-s / tau).exp();
    match shape {
        SegmentShape::Constant(c) => c + (y0 - c) * decay,
        SegmentShape::Linear { from, to } => {
            if d <= 0.0 {
                return y0;
            }
            let b = (to - from) / d;
            from + b * s - b * tau + (y0 - from + b * tau) * decay
        }
        SegmentShape::Cosine { from, to } => {
            if d <= 0.0 {
                return y0;
            }
            let mid = 0.5 * (from + to);
            let amp = 0.5 * (from - to);
            let w = PI / d;
            let wt = w * tau;
            let gain = amp / (1.0 + wt * wt);
            let particular = |x: f64| mid + gain * ((w * x).cos() + wt * (w * x).sin());
            particular(s) + (y0 - particular(0.0)) * decay
        }
    }
}

//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter violates a domain precondition (e.g. zero detuning).
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// Composing an empty field list.
    #[error("composite field requires at least one member")]
    EmptyComposite,

    /// The trajectory integrator produced a non-finite state.
    #[error("integrator failure at t = {time:.6e} s: {detail}")]
    IntegratorFailure { time: f64, detail: String },

    /// The Floquet monodromy integration overflowed or produced NaN.
    #[error("monodromy integration failed for a = {a:.6e}, q = {q:.6e}")]
    MonodromyFailure { a: f64, q: f64 },

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge (best relative error {best:.3e})")]
    QuadratureNonConvergence { best: f64 },

    /// The survival curve never crosses the 1/e level in the search window.
    #[error("lifetime undefined: curve stays above 1/e up to t = {t_max:.6e} s")]
    LifetimeNotReached { t_max: f64 },

    /// The fit failed to converge after all restarts.
    #[error("fit did not converge after {restarts} restarts")]
    FitNotConverged { restarts: usize },

    /// An ensemble of zero trajectories was requested.
    #[error("ensemble size must be at least 1")]
    EmptyEnsemble,
}

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

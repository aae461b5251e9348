//! Crate-wide error type.
//!
//! Numerical failures carry enough context (failure time, worst grid point,
//! best estimate) to diagnose a run from the error message alone.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    // ── ODE integration ──────────────────────────────────────────────
    #[error("ODE step size underflow at t = {t:.6e} (stiff blow-up or unreachable tolerance)")]
    StepSizeUnderflow { t: f64 },

    #[error("ODE state exceeded overflow guard at t = {t:.6e} (|y| > {guard:.1e})")]
    OdeOverflow { t: f64, guard: f64 },

    #[error("ODE exceeded {max_steps} steps at t = {t:.6e}")]
    OdeMaxSteps { t: f64, max_steps: usize },

    #[error("ODE relative tolerance {rel_tol:.3e} outside accepted range (1e-14, 1e-2)")]
    OdeTolerance { rel_tol: f64 },

    #[error("quadrature failed to converge: best estimate {estimate:.12e}, error bound {error_bound:.3e} > requested {tol:.3e}")]
    QuadNonConvergence {
        estimate: f64,
        error_bound: f64,
        tol: f64,
    },

    #[error("sample grid too coarse for k = {k:.6e}: {samples_per_osc:.2} samples per oscillation (minimum 8)")]
    Resolution { k: f64, samples_per_osc: f64 },

    // ── Signal / grid construction ───────────────────────────────────
    #[error("invalid sampled signal: {reason}")]
    InvalidSignal { reason: String },

    #[error("signal support not reached: |value|/max = {residual:.3e} at window edge (tolerance {tol:.1e})")]
    SupportNotReached { residual: f64, tol: f64 },

    #[error("wavenumber grid must be symmetric about 0 (mismatch at |k| = {k:.6e})")]
    AsymmetricGrid { k: f64 },

    // ── Classical regime ─────────────────────────────────────────────
    #[error("turning point: p^2 - 2 m V(z) = {kappa_sq:.6e} <= 0 at z = {z:.6e}")]
    TurningPoint { z: f64, kappa_sq: f64 },

    #[error("kinetic dominance violated at z = {z:.6e}: (E - V)/E = {ratio:.4} < required {required:.4}")]
    KineticDominance { z: f64, ratio: f64, required: f64 },

    #[error("tabulated potential queried at z = {z:.6e} outside knot range [{z_min:.6e}, {z_max:.6e}] with non-constant extrapolation")]
    TabulatedOutOfRange { z: f64, z_min: f64, z_max: f64 },

    #[error("rapidity span {span:.3e} exceeds overflow guard {max:.3e} (runaway growth)")]
    SpanTooLong { span: f64, max: f64 },

    #[error("pulse support extends to t = {t_max:.6e} > 0; the t = 0 shift formula requires a(t) = 0 for t > 0")]
    PulseSupportPositive { t_max: f64 },

    #[error("regime violation: {what}")]
    Regime { what: String },

    // ── Spectral ─────────────────────────────────────────────────────
    #[error("infrared divergent probability: |a_hat(0)| = {a_hat_0:.6e} != 0; supply k_min > 0 to cut off the k -> 0 logarithm")]
    Infrared { a_hat_0: f64 },

    // ── Configuration / IO ───────────────────────────────────────────
    #[error("invalid scenario: {what}")]
    Validation { what: String },

    #[error("parse error in {path}: {msg}")]
    Parse { path: String, msg: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// CLI exit code buckets: 2 validation, 3 numerical, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation { .. } | Error::Parse { .. } | Error::OdeTolerance { .. } => 2,
            Error::Io { .. } => 4,
            _ => 3,
        }
    }
}

//! Shared deterministic numerical kernels.
//!
//! Three families of operations live here, all pure functions of their
//! inputs and safe to call from independent workers:
//!
//! * [`ode::integrate_ode`] — adaptive embedded Runge-Kutta 5(4) with dense
//!   output, for the rapidity and position-shift equations;
//! * [`quad::quad_adaptive`] — globally adaptive Gauss-Kronrod quadrature,
//!   with exponential-decay mappings for (semi-)infinite domains;
//! * [`fourier::fourier_integral`] — Fourier-type integrals of sampled
//!   compact-support signals, evaluated per wavenumber through phase-aware
//!   (Filon-type) panels so accuracy does not degrade with oscillation count.

pub mod fourier;
pub mod ode;
pub mod quad;
pub mod spline;

pub use fourier::{fourier_integral, FourierTransformer};
pub use ode::{integrate_ode, integrate_ode_opts, OdeOptions, OdeSolution};
pub use quad::{quad_adaptive, quad_adaptive_infinite, quad_adaptive_semi_infinite, quad_segments};
pub use spline::{CubicSpline, QuinticHermite};

use crate::error::{Error, Result};

/// Default relative tolerance for ODE integration.
pub const DEFAULT_ODE_REL_TOL: f64 = 1e-10;
/// Default tolerance for adaptive quadrature.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;
/// Default compact-support tolerance, relative to the peak amplitude.
pub const DEFAULT_SUPPORT_TOL: f64 = 1e-12;

/// A real signal sampled on a strictly increasing time grid with compact
/// support: the samples at both grid ends must be negligible relative to the
/// peak, at the tolerance declared on construction.
///
/// Carrier for acceleration profiles a(t), external forces F(tau) and
/// rapidity histories beta(tau).
#[derive(Debug, Clone)]
pub struct SampledSignal {
    t: Vec<f64>,
    values: Vec<f64>,
    support_tol: f64,
}

impl SampledSignal {
    pub fn new(t: Vec<f64>, values: Vec<f64>, support_tol: f64) -> Result<Self> {
        if t.len() < 2 {
            return Err(Error::InvalidSignal {
                reason: format!("need at least 2 samples, got {}", t.len()),
            });
        }
        if t.len() != values.len() {
            return Err(Error::InvalidSignal {
                reason: format!("{} grid points but {} values", t.len(), values.len()),
            });
        }
        if !t.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::InvalidSignal {
                reason: "time grid not strictly increasing".into(),
            });
        }
        if t.iter().chain(values.iter()).any(|x| !x.is_finite()) {
            return Err(Error::InvalidSignal {
                reason: "non-finite sample".into(),
            });
        }
        let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let edge = values[0].abs().max(values[values.len() - 1].abs());
        if edge > support_tol * peak {
            return Err(Error::SupportNotReached {
                residual: if peak > 0.0 { edge / peak } else { edge },
                tol: support_tol,
            });
        }
        Ok(Self {
            t,
            values,
            support_tol,
        })
    }

    /// Sample `f` on `n` uniform points over `[t0, t1]`.
    pub fn from_fn<F: Fn(f64) -> f64>(
        f: F,
        t0: f64,
        t1: f64,
        n: usize,
        support_tol: f64,
    ) -> Result<Self> {
        let n = n.max(2);
        let h = (t1 - t0) / (n - 1) as f64;
        let t: Vec<f64> = (0..n).map(|i| t0 + i as f64 * h).collect();
        let values = t.iter().map(|&ti| f(ti)).collect();
        Self::new(t, values, support_tol)
    }

    pub fn t_grid(&self) -> &[f64] {
        &self.t
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn support_tol(&self) -> f64 {
        self.support_tol
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 2 by construction
    }

    pub fn peak(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn span(&self) -> (f64, f64) {
        (self.t[0], self.t[self.t.len() - 1])
    }
}

/// Least-squares straight-line fit; returns (slope, intercept).
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    assert_eq!(x.len(), y.len());
    assert!(x.len() >= 2);
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&xi, &yi) in x.iter().zip(y) {
        sxx += (xi - mx) * (xi - mx);
        sxy += (xi - mx) * (yi - my);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Relative deviation |a - b| / max(|a|, |b|, floor).
pub fn rel_dev(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(floor)
}

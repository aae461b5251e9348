//! Adaptive embedded Runge-Kutta 5(4) (Dormand-Prince) with continuous
//! dense output, the workhorse for the rapidity and position-shift ODEs.
//! All of those systems are smooth and non-stiff once reduction of order is
//! applied, so an explicit 5(4) pair with local extrapolation is the right
//! tool; the runaway demonstration only needs short spans.

use crate::error::{Error, Result};

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A21: f64 = 0.2;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b_hat (5th minus embedded 4th order weights)
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
// dense-output coefficients (Hairer, Norsett & Wanner, dopri5)
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

#[derive(Debug, Clone)]
pub struct OdeOptions {
    pub rel_tol: f64,
    /// Per-component absolute tolerance floor. The small default keeps the
    /// control effectively relative while avoiding 0/0 on zero solutions.
    pub abs_tol: f64,
    pub max_steps: usize,
    /// States with any |y| above this are treated as a blow-up.
    pub overflow_guard: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: super::DEFAULT_ODE_REL_TOL,
            abs_tol: 1e-30,
            max_steps: 1_000_000,
            overflow_guard: 1e100,
        }
    }
}

/// One accepted step with its interpolation coefficients, layout
/// `cont[j * dim + i]` for coefficient j of component i.
#[derive(Debug, Clone)]
struct DenseStep {
    t: f64,
    h: f64,
    cont: Vec<f64>,
}

/// Dense solution path: the state is queryable at any point of the
/// integration span.
#[derive(Debug, Clone)]
pub struct OdeSolution {
    dim: usize,
    t_start: f64,
    t_end: f64,
    forward: bool,
    steps: Vec<DenseStep>,
    y_end: Vec<f64>,
    pub n_accepted: usize,
    pub n_rejected: usize,
}

impl OdeSolution {
    pub fn t_span(&self) -> (f64, f64) {
        (self.t_start, self.t_end)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn final_state(&self) -> &[f64] {
        &self.y_end
    }

    /// Interpolated state at `t`; clamped to the integration span.
    pub fn eval_into(&self, t: f64, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.dim);
        let idx = self.locate_step(t);
        let step = &self.steps[idx];
        let theta = ((t - step.t) / step.h).clamp(0.0, 1.0);
        let om = 1.0 - theta;
        let d = self.dim;
        for i in 0..d {
            let c1 = step.cont[i];
            let c2 = step.cont[d + i];
            let c3 = step.cont[2 * d + i];
            let c4 = step.cont[3 * d + i];
            let c5 = step.cont[4 * d + i];
            out[i] = c1 + theta * (c2 + om * (c3 + theta * (c4 + om * c5)));
        }
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.eval_into(t, &mut out);
        out
    }

    fn locate_step(&self, t: f64) -> usize {
        let n = self.steps.len();
        if self.forward {
            if t <= self.steps[0].t {
                return 0;
            }
            let idx = self.steps.partition_point(|s| s.t <= t);
            (idx - 1).min(n - 1)
        } else {
            if t >= self.steps[0].t {
                return 0;
            }
            let idx = self.steps.partition_point(|s| s.t >= t);
            (idx - 1).min(n - 1)
        }
    }
}

/// Integrate `dy/dt = rhs(t, y)` from `t_span.0` to `t_span.1` (either
/// direction) with local error controlled to `rel_tol` by adaptive step
/// size. Returns a dense solution queryable at any interior time.
pub fn integrate_ode<F>(rhs: F, state0: &[f64], t_span: (f64, f64), rel_tol: f64) -> Result<OdeSolution>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    if !(rel_tol > 1e-14 && rel_tol < 1e-2) {
        return Err(Error::OdeTolerance { rel_tol });
    }
    integrate_ode_opts(
        rhs,
        state0,
        t_span,
        &OdeOptions {
            rel_tol,
            ..OdeOptions::default()
        },
    )
}

/// As [`integrate_ode`] but with explicit options (absolute tolerance floor,
/// step budget, overflow guard).
pub fn integrate_ode_opts<F>(
    rhs: F,
    state0: &[f64],
    t_span: (f64, f64),
    opts: &OdeOptions,
) -> Result<OdeSolution>
where
    F: Fn(f64, &[f64], &mut [f64]),
{
    let dim = state0.len();
    let (t0, t1) = t_span;
    let forward = t1 >= t0;
    let dir = if forward { 1.0 } else { -1.0 };
    let span = (t1 - t0).abs();

    let mut sol = OdeSolution {
        dim,
        t_start: t0,
        t_end: t1,
        forward,
        steps: Vec::new(),
        y_end: state0.to_vec(),
        n_accepted: 0,
        n_rejected: 0,
    };
    if span == 0.0 {
        sol.steps.push(DenseStep {
            t: t0,
            h: dir * f64::MIN_POSITIVE,
            cont: {
                let mut c = vec![0.0; 5 * dim];
                c[..dim].copy_from_slice(state0);
                c
            },
        });
        return Ok(sol);
    }

    let rtol = opts.rel_tol;
    let atol = opts.abs_tol;

    let mut t = t0;
    let mut y = state0.to_vec();
    let mut k1 = vec![0.0; dim];
    rhs(t, &y, &mut k1);

    // initial step-size guess from the scaled derivative norms
    let sc_norm = |v: &[f64], y: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..dim {
            let w = atol + rtol * y[i].abs();
            s += (v[i] / w).powi(2);
        }
        (s / dim as f64).sqrt()
    };
    let d0 = sc_norm(&y, &y);
    let d1 = sc_norm(&k1, &y);
    let mut h = if d0 < 1e-5 || d1 < 1e-5 || !(d0 / d1).is_finite() {
        1e-6 * span
    } else {
        0.01 * (d0 / d1)
    };
    // the controller grows a conservative guess quickly; never start below
    // the underflow guard
    h = h.clamp(1e-9 * span, span);

    let mut k2 = vec![0.0; dim];
    let mut k3 = vec![0.0; dim];
    let mut k4 = vec![0.0; dim];
    let mut k5 = vec![0.0; dim];
    let mut k6 = vec![0.0; dim];
    let mut k7 = vec![0.0; dim];
    let mut y_stage = vec![0.0; dim];
    let mut y_new = vec![0.0; dim];

    let mut steps_taken = 0usize;
    loop {
        if steps_taken >= opts.max_steps {
            return Err(Error::OdeMaxSteps {
                t,
                max_steps: opts.max_steps,
            });
        }
        steps_taken += 1;

        let remaining = (t1 - t) * dir;
        if remaining <= 0.0 {
            break;
        }
        h = h.min(remaining);
        if h < 16.0 * f64::EPSILON * t.abs().max(1.0) {
            return Err(Error::StepSizeUnderflow { t });
        }
        let hs = dir * h;

        // stages
        for i in 0..dim {
            y_stage[i] = y[i] + hs * A21 * k1[i];
        }
        rhs(t + C[1] * hs, &y_stage, &mut k2);
        for i in 0..dim {
            y_stage[i] = y[i] + hs * (A31 * k1[i] + A32 * k2[i]);
        }
        rhs(t + C[2] * hs, &y_stage, &mut k3);
        for i in 0..dim {
            y_stage[i] = y[i] + hs * (A41 * k1[i] + A42 * k2[i] + A43 * k3[i]);
        }
        rhs(t + C[3] * hs, &y_stage, &mut k4);
        for i in 0..dim {
            y_stage[i] = y[i] + hs * (A51 * k1[i] + A52 * k2[i] + A53 * k3[i] + A54 * k4[i]);
        }
        rhs(t + C[4] * hs, &y_stage, &mut k5);
        for i in 0..dim {
            y_stage[i] = y[i]
                + hs * (A61 * k1[i] + A62 * k2[i] + A63 * k3[i] + A64 * k4[i] + A65 * k5[i]);
        }
        rhs(t + C[5] * hs, &y_stage, &mut k6);
        for i in 0..dim {
            y_new[i] =
                y[i] + hs * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        }
        rhs(t + hs, &y_new, &mut k7);

        if y_new.iter().any(|v| !v.is_finite() || v.abs() > opts.overflow_guard) {
            return Err(Error::OdeOverflow {
                t,
                guard: opts.overflow_guard,
            });
        }

        // embedded error estimate
        let mut err_norm = 0.0f64;
        for i in 0..dim {
            let e = hs
                * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let w = atol + rtol * y[i].abs().max(y_new[i].abs());
            err_norm += (e / w).powi(2);
        }
        err_norm = (err_norm / dim as f64).sqrt();

        if err_norm <= 1.0 {
            // dense-output coefficients for this step
            let mut cont = vec![0.0; 5 * dim];
            for i in 0..dim {
                let ydiff = y_new[i] - y[i];
                let bspl = hs * k1[i] - ydiff;
                cont[i] = y[i];
                cont[dim + i] = ydiff;
                cont[2 * dim + i] = bspl;
                cont[3 * dim + i] = ydiff - hs * k7[i] - bspl;
                cont[4 * dim + i] = hs
                    * (D1 * k1[i]
                        + D3 * k3[i]
                        + D4 * k4[i]
                        + D5 * k5[i]
                        + D6 * k6[i]
                        + D7 * k7[i]);
            }
            sol.steps.push(DenseStep { t, h: hs, cont });
            sol.n_accepted += 1;

            t += hs;
            y.copy_from_slice(&y_new);
            k1.copy_from_slice(&k7); // FSAL

            let fac = (0.9 * err_norm.powf(-0.2)).clamp(0.2, 10.0);
            h *= fac;
        } else {
            sol.n_rejected += 1;
            let fac = (0.9 * err_norm.powf(-0.2)).clamp(0.2, 1.0);
            h *= fac;
        }
    }

    sol.y_end = y;
    Ok(sol)
}

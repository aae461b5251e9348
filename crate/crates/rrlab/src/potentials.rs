//! Asymptotically constant smooth 1D potentials and the unperturbed
//! (radiation-free) classical motion through them.
//!
//! The particle always moves in the positive z-direction in the kinetic-
//! dominance regime, so the velocity law v_p(z) = sqrt(p^2 - 2 m V(z)) / m
//! determines everything: t(z) follows by quadrature of 1/v_p and is
//! inverted onto a time grid. Time is fixed by the convention t = 0 at
//! z = 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    quad_adaptive, CubicSpline, QuinticHermite, SampledSignal, DEFAULT_QUAD_TOL,
    DEFAULT_SUPPORT_TOL,
};

/// Particle mass and coupling in natural units (hbar = c = 1), plus the
/// dimensionless semiclassical scale knob used by the WKB module.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PhysicalParams {
    /// particle mass (energy units)
    pub m: f64,
    /// dimensionless coupling alpha = e^2 / 4 pi
    pub alpha: f64,
    /// semiclassical scale factor multiplying hbar (default 1)
    #[serde(default = "default_hbar_eff")]
    pub hbar_eff: f64,
}

fn default_hbar_eff() -> f64 {
    1.0
}

impl PhysicalParams {
    pub fn new(m: f64, alpha: f64, hbar_eff: f64) -> Result<Self> {
        let p = Self { m, alpha, hbar_eff };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.m > 0.0 && self.m.is_finite()) {
            return Err(Error::Validation {
                what: format!("mass must be positive, got {}", self.m),
            });
        }
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::Validation {
                what: format!("coupling alpha must be non-negative, got {}", self.alpha),
            });
        }
        if !(self.hbar_eff > 0.0 && self.hbar_eff.is_finite()) {
            return Err(Error::Validation {
                what: format!("hbar_eff must be positive, got {}", self.hbar_eff),
            });
        }
        Ok(())
    }

    /// Radiation-reaction time scale tau0 = 2 alpha / (3 m).
    pub fn tau0(&self) -> f64 {
        2.0 * self.alpha / (3.0 * self.m)
    }
}

/// Asymptotically constant smooth potential families.
///
/// The step has unequal asymptotic velocities (the infrared-divergent
/// emission regime); the bump has equal ones (finite emission probability).
/// Tabulated admits external two-column data with C^2 interpolation.
#[derive(Debug, Clone)]
pub enum PotentialSpec {
    /// V(z) = (v0 / 2) (1 - tanh((z - z0) / length)): v0 on the far left,
    /// 0 on the far right.
    SmoothStep { v0: f64, length: f64, z0: f64 },
    /// V(z) = v0 exp(-(z - z0)^2 / 2 width^2).
    GaussianBump { v0: f64, width: f64, z0: f64 },
    Tabulated(TabulatedPotential),
}

/// Knot data with a natural cubic spline interpolant.
#[derive(Debug, Clone)]
pub struct TabulatedPotential {
    pub path: String,
    z: Vec<f64>,
    spline: CubicSpline,
    max_slope: f64,
}

impl TabulatedPotential {
    pub fn new(path: String, z: Vec<f64>, v: Vec<f64>) -> Result<Self> {
        if z.len() < 4 {
            return Err(Error::Parse {
                path,
                msg: format!("need at least 4 knots, got {}", z.len()),
            });
        }
        if z.len() != v.len() {
            return Err(Error::Parse {
                path,
                msg: "z and V column lengths differ".into(),
            });
        }
        if !z.windows(2).all(|w| w[1] > w[0]) {
            return Err(Error::Parse {
                path,
                msg: "z knots not strictly increasing".into(),
            });
        }
        let spline = CubicSpline::new(&z, &v);
        let max_slope = z
            .iter()
            .map(|&zi| spline.deriv(zi).abs())
            .fold(0.0f64, f64::max);
        Ok(Self {
            path,
            z,
            spline,
            max_slope,
        })
    }

    /// Parse a two-column (z, V) text file; `#` starts a comment, columns
    /// are whitespace-separated and z must be strictly increasing.
    pub fn from_file(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_string(),
            source,
        })?;
        let mut z = Vec::new();
        let mut v = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut cols = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<f64> {
                s.ok_or_else(|| Error::Parse {
                    path: path.to_string(),
                    msg: format!("line {}: expected two columns", lineno + 1),
                })?
                .parse::<f64>()
                .map_err(|e| Error::Parse {
                    path: path.to_string(),
                    msg: format!("line {}: {}", lineno + 1, e),
                })
            };
            z.push(parse(cols.next())?);
            v.push(parse(cols.next())?);
            if cols.next().is_some() {
                return Err(Error::Parse {
                    path: path.to_string(),
                    msg: format!("line {}: more than two columns", lineno + 1),
                });
            }
        }
        Self::new(path.to_string(), z, v)
    }

    pub fn knot_range(&self) -> (f64, f64) {
        (self.z[0], self.z[self.z.len() - 1])
    }

    pub fn n_knots(&self) -> usize {
        self.z.len()
    }
}

/// Evaluate a potential and its first two derivatives at `z`.
pub fn potential_eval(spec: &PotentialSpec, z: f64) -> Result<(f64, f64, f64)> {
    match spec {
        PotentialSpec::SmoothStep { v0, length, z0 } => {
            let u = (z - z0) / length;
            let th = u.tanh();
            let sech2 = 1.0 - th * th;
            Ok((
                0.5 * v0 * (1.0 - th),
                -0.5 * v0 / length * sech2,
                v0 / (length * length) * sech2 * th,
            ))
        }
        PotentialSpec::GaussianBump { v0, width, z0 } => {
            let u = (z - z0) / width;
            let e = (-0.5 * u * u).exp();
            Ok((
                v0 * e,
                -v0 * u * e / width,
                v0 * (u * u - 1.0) * e / (width * width),
            ))
        }
        PotentialSpec::Tabulated(tab) => {
            let (z_min, z_max) = tab.knot_range();
            if z < z_min || z > z_max {
                // constant extrapolation is only valid once the boundary
                // slope has died out
                let edge = if z < z_min { z_min } else { z_max };
                if tab.max_slope > 0.0
                    && tab.spline.deriv(edge).abs() > DEFAULT_SUPPORT_TOL * tab.max_slope
                {
                    return Err(Error::TabulatedOutOfRange { z, z_min, z_max });
                }
                return Ok((tab.spline.eval(edge), 0.0, 0.0));
            }
            Ok((
                tab.spline.eval(z),
                tab.spline.deriv(z),
                tab.spline.deriv2(z),
            ))
        }
    }
}

impl PotentialSpec {
    pub fn v(&self, z: f64) -> Result<f64> {
        potential_eval(self, z).map(|t| t.0)
    }

    pub fn dv(&self, z: f64) -> Result<f64> {
        potential_eval(self, z).map(|t| t.1)
    }

    /// Window outside which |V'(z)| <= 1e-12 max |V'| (asymptotic
    /// constancy). For a vanishing potential an arbitrary unit window around
    /// the centre is returned.
    pub fn slope_support_window(&self) -> Result<(f64, f64)> {
        // solve at a quarter of the declared tolerance so that sampled
        // signals sit strictly inside it after rounding
        let tol = 0.25 * DEFAULT_SUPPORT_TOL;
        match self {
            PotentialSpec::SmoothStep { v0, length, z0 } => {
                if *v0 == 0.0 {
                    return Ok((z0 - 1.0, z0 + 1.0));
                }
                // sech^2(u) = tol  =>  u = acosh(1 / sqrt(tol))
                let u = (1.0 / tol.sqrt()).acosh();
                Ok((z0 - u * length, z0 + u * length))
            }
            PotentialSpec::GaussianBump { v0, width, z0 } => {
                if *v0 == 0.0 {
                    return Ok((z0 - 1.0, z0 + 1.0));
                }
                // solve u e^{-u^2/2} = tol e^{-1/2} for u > 1 by bisection
                let target = tol * (-0.5f64).exp();
                let h = |u: f64| u * (-0.5 * u * u).exp() - target;
                let (mut lo, mut hi) = (1.0, 60.0);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if h(mid) > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let u = 0.5 * (lo + hi);
                Ok((z0 - u * width, z0 + u * width))
            }
            PotentialSpec::Tabulated(tab) => {
                let (z_min, z_max) = tab.knot_range();
                let edge_slope = tab
                    .spline
                    .deriv(z_min)
                    .abs()
                    .max(tab.spline.deriv(z_max).abs());
                if tab.max_slope > 0.0 && edge_slope > DEFAULT_SUPPORT_TOL * tab.max_slope {
                    return Err(Error::SupportNotReached {
                        residual: edge_slope / tab.max_slope,
                        tol: DEFAULT_SUPPORT_TOL,
                    });
                }
                Ok((z_min, z_max))
            }
        }
    }

    /// Largest |V| over the slope-support window (dense scan).
    pub fn max_abs_v(&self) -> Result<f64> {
        let (z_lo, z_hi) = self.slope_support_window()?;
        let n = 2001;
        let mut max_v = 0.0f64;
        for i in 0..n {
            let z = z_lo + (z_hi - z_lo) * i as f64 / (n - 1) as f64;
            max_v = max_v.max(self.v(z)?.abs());
        }
        Ok(max_v)
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            PotentialSpec::SmoothStep { .. } => "smooth_step",
            PotentialSpec::GaussianBump { .. } => "gaussian_bump",
            PotentialSpec::Tabulated(_) => "tabulated",
        }
    }
}

/// Sampling policy for trajectories and acceleration profiles.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridPolicy {
    /// samples for time-domain signals
    pub n_time: usize,
    /// spatial nodes for the t(z) quadrature / inversion
    pub n_space: usize,
    /// required (E - V) / E everywhere; the kinetic-dominance threshold
    pub kinetic_dominance: f64,
}

impl Default for GridPolicy {
    fn default() -> Self {
        Self {
            n_time: 8001,
            n_space: 4001,
            kinetic_dominance: 0.5,
        }
    }
}

/// Unperturbed classical motion: samples of (t, z, v, a) with t = 0 at
/// z = 0, plus a dense interpolant. Beyond the sampled window the motion is
/// extended as free (the potential is constant there).
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub p: f64,
    pub energy: f64,
    pub v_init: f64,
    pub v_fin: f64,
    pub t: Vec<f64>,
    pub z: Vec<f64>,
    pub v: Vec<f64>,
    pub a: Vec<f64>,
    path: QuinticHermite,
    potential: PotentialSpec,
    mass: f64,
}

impl Trajectory {
    pub fn t_span(&self) -> (f64, f64) {
        (self.t[0], self.t[self.t.len() - 1])
    }

    pub fn z_at(&self, t: f64) -> f64 {
        let (t0, t1) = self.t_span();
        if t < t0 {
            self.z[0] + self.v_init * (t - t0)
        } else if t > t1 {
            self.z[self.z.len() - 1] + self.v_fin * (t - t1)
        } else {
            self.path.eval(t)
        }
    }

    pub fn v_at(&self, t: f64) -> f64 {
        let z = self.z_at(t);
        let v_pot = self.potential.v(z).expect("potential valid on path");
        kappa_velocity(self.p, self.mass, v_pot)
    }

    /// dv/dt = -V'(z)/m along the trajectory.
    pub fn a_at(&self, t: f64) -> f64 {
        let z = self.z_at(t);
        -self.potential.dv(z).expect("potential valid on path") / self.mass
    }

    /// d^2 v / dt^2 = -V''(z) v / m (analytic, no double differencing).
    pub fn adot_at(&self, t: f64) -> f64 {
        let z = self.z_at(t);
        let (_, _, vpp) = potential_eval(&self.potential, z).expect("potential valid on path");
        -vpp * self.v_at(t) / self.mass
    }

    pub fn potential(&self) -> &PotentialSpec {
        &self.potential
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }
}

fn kappa_velocity(p: f64, m: f64, v_pot: f64) -> f64 {
    (p * p - 2.0 * m * v_pot).sqrt() / m
}

/// Compute the unperturbed trajectory for asymptotic final momentum `p`
/// (where V = 0 on the right).
///
/// t(z) is accumulated by per-panel quadrature of 1/v_p on a spatial grid
/// containing z = 0 exactly, then inverted to z(t) with a quintic Hermite
/// interpolant whose nodal first and second derivatives (v and a) are exact.
pub fn classical_trajectory(
    spec: &PotentialSpec,
    params: &PhysicalParams,
    p: f64,
    grid: &GridPolicy,
) -> Result<Trajectory> {
    params.validate()?;
    if !(p > 0.0) {
        return Err(Error::Validation {
            what: format!("momentum must be positive, got {p}"),
        });
    }
    let m = params.m;
    let energy = p * p / (2.0 * m);

    let (z_lo, z_hi) = spec.slope_support_window()?;
    let width = z_hi - z_lo;
    let pad = 0.05 * width;
    let z_min = z_lo.min(-pad);
    let z_max = z_hi.max(pad);

    // regime checks on a dense scan: no turning point, kinetic dominance
    let n_scan = 4001;
    let mut worst_ratio = f64::INFINITY;
    let mut worst_z = z_min;
    for i in 0..n_scan {
        let z = z_min + (z_max - z_min) * i as f64 / (n_scan - 1) as f64;
        let v_pot = spec.v(z)?;
        let kappa_sq = p * p - 2.0 * m * v_pot;
        if kappa_sq <= 0.0 {
            return Err(Error::TurningPoint { z, kappa_sq });
        }
        let ratio = (energy - v_pot) / energy;
        if ratio < worst_ratio {
            worst_ratio = ratio;
            worst_z = z;
        }
    }
    if worst_ratio < grid.kinetic_dominance {
        return Err(Error::KineticDominance {
            z: worst_z,
            ratio: worst_ratio,
            required: grid.kinetic_dominance,
        });
    }

    // spatial grid containing 0 exactly, roughly uniform overall
    let n_total = grid.n_space.max(64);
    let frac_left = (-z_min) / (z_max - z_min);
    let n_left = ((n_total as f64 * frac_left).round() as usize).clamp(2, n_total - 2);
    let n_right = n_total - n_left;
    let mut z_nodes = Vec::with_capacity(n_left + n_right + 1);
    for i in 0..=n_left {
        z_nodes.push(z_min + (0.0 - z_min) * i as f64 / n_left as f64);
    }
    z_nodes[n_left] = 0.0;
    for i in 1..=n_right {
        z_nodes.push((z_max - 0.0) * i as f64 / n_right as f64);
    }
    let i_zero = n_left;

    // cumulative t(z) from t(0) = 0 by quadrature of 1 / v_p per panel
    let inv_v = |z: f64| 1.0 / kappa_velocity(p, m, spec.v(z).expect("scanned above"));
    let n_nodes = z_nodes.len();
    let mut t_nodes = vec![0.0; n_nodes];
    for i in i_zero..n_nodes - 1 {
        let dt = quad_adaptive(inv_v, z_nodes[i], z_nodes[i + 1], 1e-13)?;
        t_nodes[i + 1] = t_nodes[i] + dt;
    }
    for i in (0..i_zero).rev() {
        let dt = quad_adaptive(inv_v, z_nodes[i], z_nodes[i + 1], 1e-13)?;
        t_nodes[i] = t_nodes[i + 1] - dt;
    }

    let v_nodes: Vec<f64> = z_nodes.iter().map(|&z| 1.0 / inv_v(z)).collect();
    let mut a_nodes = Vec::with_capacity(n_nodes);
    for &z in &z_nodes {
        a_nodes.push(-spec.dv(z)? / m);
    }

    let path = QuinticHermite::new(&t_nodes, &z_nodes, &v_nodes, &a_nodes);
    let v_init = v_nodes[0];
    let v_fin = v_nodes[n_nodes - 1];

    Ok(Trajectory {
        p,
        energy,
        v_init,
        v_fin,
        t: t_nodes,
        z: z_nodes,
        v: v_nodes,
        a: a_nodes,
        path,
        potential: spec.clone(),
        mass: m,
    })
}

/// How an acceleration profile samples the motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMode {
    /// a(t) = -V'(z(t)) / m along the exact trajectory
    Exact,
    /// lowest-order sampling a(t) = -V'(p t / m) / m
    StraightLine,
    /// synthetic analytic pulse, defined directly in time
    Pulse,
}

#[derive(Debug, Clone)]
enum ProfileShape {
    Exact(Box<Trajectory>),
    StraightLine {
        potential: PotentialSpec,
        m: f64,
        p: f64,
    },
    GaussianPulse {
        a0: f64,
        sigma: f64,
        t0: f64,
    },
}

/// A compactly supported acceleration history a(t) with both sampled and
/// dense (closed-form) representations.
#[derive(Debug, Clone)]
pub struct AccelerationProfile {
    pub mode: ProfileMode,
    pub p: f64,
    pub signal: SampledSignal,
    /// int a dt over the support, by adaptive quadrature (metadata)
    pub integral_a_dt: f64,
    shape: ProfileShape,
}

impl AccelerationProfile {
    pub fn eval(&self, t: f64) -> f64 {
        match &self.shape {
            ProfileShape::Exact(traj) => traj.a_at(t),
            ProfileShape::StraightLine { potential, m, p } => {
                -potential.dv(p * t / m).unwrap_or(0.0) / m
            }
            ProfileShape::GaussianPulse { a0, sigma, t0 } => {
                a0 * (-(t - t0) * (t - t0) / (2.0 * sigma * sigma)).exp()
            }
        }
    }

    pub fn support(&self) -> (f64, f64) {
        self.signal.span()
    }

    /// Trajectory backing an exact-mode profile.
    pub fn trajectory(&self) -> Option<&Trajectory> {
        match &self.shape {
            ProfileShape::Exact(t) => Some(t),
            _ => None,
        }
    }

    /// Synthetic Gaussian pulse a(t) = a0 exp(-(t - t0)^2 / 2 sigma^2),
    /// sampled over t0 +- 9 sigma.
    pub fn gaussian_pulse(a0: f64, sigma: f64, t0: f64, p: f64, n: usize) -> Result<Self> {
        let f = move |t: f64| a0 * (-(t - t0) * (t - t0) / (2.0 * sigma * sigma)).exp();
        let signal =
            SampledSignal::from_fn(f, t0 - 9.0 * sigma, t0 + 9.0 * sigma, n, DEFAULT_SUPPORT_TOL)?;
        let integral_a_dt =
            quad_adaptive(f, t0 - 9.0 * sigma, t0 + 9.0 * sigma, DEFAULT_QUAD_TOL)?;
        Ok(Self {
            mode: ProfileMode::Pulse,
            p,
            signal,
            integral_a_dt,
            shape: ProfileShape::GaussianPulse { a0, sigma, t0 },
        })
    }
}

/// Sample the acceleration history for final momentum `p` in the requested
/// mode, over a window meeting the compact-support tolerance.
pub fn acceleration_profile(
    spec: &PotentialSpec,
    params: &PhysicalParams,
    p: f64,
    mode: ProfileMode,
    grid: &GridPolicy,
) -> Result<AccelerationProfile> {
    let m = params.m;
    match mode {
        ProfileMode::Exact => {
            let traj = classical_trajectory(spec, params, p, grid)?;
            let (t0, t1) = traj.t_span();
            let n = grid.n_time.max(64);
            let h = (t1 - t0) / (n - 1) as f64;
            let t: Vec<f64> = (0..n).map(|i| t0 + i as f64 * h).collect();
            let values: Vec<f64> = t.iter().map(|&ti| traj.a_at(ti)).collect();
            let signal = SampledSignal::new(t, values, DEFAULT_SUPPORT_TOL)?;
            // int a dt = int (-V'/m) dz / v_p, smooth in z
            let (z_lo, z_hi) = (traj.z[0], traj.z[traj.z.len() - 1]);
            let integrand = |z: f64| {
                let vp = kappa_velocity(p, m, spec.v(z).expect("validated"));
                -spec.dv(z).expect("validated") / m / vp
            };
            let integral_a_dt = quad_adaptive(integrand, z_lo, z_hi, DEFAULT_QUAD_TOL)?;
            Ok(AccelerationProfile {
                mode,
                p,
                signal,
                integral_a_dt,
                shape: ProfileShape::Exact(Box::new(traj)),
            })
        }
        ProfileMode::StraightLine => {
            let (z_lo, z_hi) = spec.slope_support_window()?;
            let (t0, t1) = (m * z_lo / p, m * z_hi / p);
            let n = grid.n_time.max(64);
            let h = (t1 - t0) / (n - 1) as f64;
            let a_sl = |t: f64| -spec.dv(p * t / m).expect("inside window") / m;
            let t: Vec<f64> = (0..n).map(|i| t0 + i as f64 * h).collect();
            let values: Vec<f64> = t.iter().map(|&ti| a_sl(ti)).collect();
            let signal = SampledSignal::new(t, values, DEFAULT_SUPPORT_TOL)?;
            let integral_a_dt = quad_adaptive(a_sl, t0, t1, DEFAULT_QUAD_TOL)?;
            Ok(AccelerationProfile {
                mode,
                p,
                signal,
                integral_a_dt,
                shape: ProfileShape::StraightLine {
                    potential: spec.clone(),
                    m,
                    p,
                },
            })
        }
        ProfileMode::Pulse => Err(Error::Validation {
            what: "synthetic pulses are built via AccelerationProfile::gaussian_pulse".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> PhysicalParams {
        PhysicalParams::new(1.0, 1.0 / 137.036, 1.0).unwrap()
    }

    fn step(v0: f64) -> PotentialSpec {
        PotentialSpec::SmoothStep {
            v0,
            length: 1.0,
            z0: -25.0,
        }
    }

    fn bump(v0: f64) -> PotentialSpec {
        PotentialSpec::GaussianBump {
            v0,
            width: 1.0,
            z0: -25.0,
        }
    }

    #[test]
    fn bump_center_derivatives() {
        // at the centre: (V0, 0, -V0/w^2)
        let spec = PotentialSpec::GaussianBump {
            v0: 0.3,
            width: 2.0,
            z0: 1.5,
        };
        let (v, vp, vpp) = potential_eval(&spec, 1.5).unwrap();
        assert_eq!(v, 0.3);
        assert_eq!(vp, 0.0);
        assert!((vpp + 0.3 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn step_center_and_asymptotes() {
        let spec = PotentialSpec::SmoothStep {
            v0: 0.2,
            length: 0.5,
            z0: 3.0,
        };
        // at z0: (V0/2, -V0/(2L), 0)
        let (v, vp, vpp) = potential_eval(&spec, 3.0).unwrap();
        assert!((v - 0.1).abs() < 1e-15);
        assert!((vp + 0.2).abs() < 1e-15);
        assert!(vpp.abs() < 1e-15);
        // far right: (0, 0, 0)
        let (v, vp, vpp) = potential_eval(&spec, 3.0 + 60.0).unwrap();
        assert!(v.abs() < 1e-15 && vp.abs() < 1e-15 && vpp.abs() < 1e-15);
        // far left: V -> V0
        let (v, _, _) = potential_eval(&spec, 3.0 - 60.0).unwrap();
        assert!((v - 0.2).abs() < 1e-15);
    }

    #[test]
    fn slope_window_meets_tolerance() {
        for spec in [step(5e-4), bump(5e-4)] {
            let (z_lo, z_hi) = spec.slope_support_window().unwrap();
            let max_slope = (0..2001)
                .map(|i| {
                    let z = z_lo + (z_hi - z_lo) * i as f64 / 2000.0;
                    spec.dv(z).unwrap().abs()
                })
                .fold(0.0f64, f64::max);
            for z in [z_lo, z_hi] {
                assert!(spec.dv(z).unwrap().abs() <= 1.0001e-12 * max_slope);
            }
        }
    }

    #[test]
    fn free_particle_trajectory() {
        let spec = bump(0.0);
        let p = 0.08;
        let traj = classical_trajectory(&spec, &params(), p, &GridPolicy::default()).unwrap();
        assert_eq!(traj.v_init, p);
        assert_eq!(traj.v_fin, p);
        for j in 0..50 {
            let t = -300.0 + 12.0 * j as f64;
            assert!((traj.z_at(t) - p * t).abs() < 1e-10, "z at {t}");
            assert!(traj.a_at(t).abs() < 1e-18);
        }
    }

    #[test]
    fn smoothstep_asymptotic_velocities() {
        let (v0, p) = (5e-4, 0.08);
        let traj = classical_trajectory(&step(v0), &params(), p, &GridPolicy::default()).unwrap();
        let m = 1.0;
        let v_i = (p * p - 2.0 * m * v0).sqrt() / m;
        assert!((traj.v_init - v_i).abs() < 1e-12, "v_init {}", traj.v_init);
        assert!((traj.v_fin - p / m).abs() < 1e-12, "v_fin {}", traj.v_fin);
    }

    #[test]
    fn trajectory_invariants_hold() {
        let (v0, p) = (5e-4, 0.08);
        let traj = classical_trajectory(&step(v0), &params(), p, &GridPolicy::default()).unwrap();
        let e = traj.energy;
        // t = 0 at z = 0 exactly
        let i0 = traj.z.iter().position(|&z| z == 0.0).unwrap();
        assert_eq!(traj.t[i0], 0.0);
        // energy conservation and forward motion at every sample
        for i in 0..traj.t.len() {
            let v_pot = traj.potential().v(traj.z[i]).unwrap();
            let h = 0.5 * traj.v[i] * traj.v[i] + v_pot;
            assert!((h - e).abs() <= 1e-10 * e, "sample {i}");
            assert!(traj.v[i] > 0.0);
            assert!(e - v_pot >= 0.5 * e);
        }
        // dense path hits the nodes
        for i in (0..traj.t.len()).step_by(97) {
            assert!((traj.z_at(traj.t[i]) - traj.z[i]).abs() < 1e-12);
        }
    }

    #[test]
    fn inversion_matches_quadrature_oracle() {
        // independent check of z(t): t(z(t)) = t via adaptive quadrature
        let (v0, p) = (5e-4, 0.08);
        let spec = step(v0);
        let traj = classical_trajectory(&spec, &params(), p, &GridPolicy::default()).unwrap();
        let m = 1.0;
        let inv_v = |z: f64| m / (p * p - 2.0 * m * spec.v(z).unwrap()).sqrt();
        for &tq in &[-200.0, -80.0, -10.0, 5.0] {
            let z = traj.z_at(tq);
            let t_back = quad_adaptive(inv_v, 0.0, z, 1e-13).unwrap();
            assert!((t_back - tq).abs() < 1e-9, "t {tq}: back {t_back}");
        }
    }

    #[test]
    fn turning_point_is_rejected() {
        let spec = bump(0.01);
        let p = 0.08; // p^2 = 0.0064 < 2 m V0 = 0.02
        let err = classical_trajectory(&spec, &params(), p, &GridPolicy::default());
        assert!(matches!(err, Err(Error::TurningPoint { .. })));
    }

    #[test]
    fn kinetic_dominance_names_worst_point() {
        let spec = bump(2e-3); // E = 3.2e-3, (E - V)/E = 0.375 < 0.5
        let err = classical_trajectory(&spec, &params(), 0.08, &GridPolicy::default());
        match err {
            Err(Error::KineticDominance { z, ratio, .. }) => {
                assert!((z - (-25.0)).abs() < 0.1, "worst z {z}");
                assert!((ratio - 0.375).abs() < 1e-3);
            }
            other => panic!("expected kinetic dominance error, got {other:?}"),
        }
    }

    #[test]
    fn straight_line_profile_is_sech_squared() {
        // a(t) = (V0 / 2 m L) sech^2((p t / m - z0) / L); int a dt = V0 / p
        let (v0, p, ell) = (5e-4, 0.08, 1.0);
        let spec = step(v0);
        let prof = acceleration_profile(
            &spec,
            &params(),
            p,
            ProfileMode::StraightLine,
            &GridPolicy::default(),
        )
        .unwrap();
        let m = 1.0;
        for &t in &[-320.0, -312.5, -300.0, -280.0] {
            let u = (p * t / m + 25.0) / ell;
            let expect = v0 / (2.0 * m * ell) / u.cosh().powi(2);
            assert!((prof.eval(t) - expect).abs() < 1e-18 + 1e-12 * expect.abs());
        }
        assert!(
            (prof.integral_a_dt - v0 / p).abs() < 1e-10 * (v0 / p),
            "int a dt = {}",
            prof.integral_a_dt
        );
    }

    #[test]
    fn exact_profile_integral_telescopes_to_velocity_change() {
        let (v0, p) = (5e-4, 0.08);
        let prof = acceleration_profile(
            &step(v0),
            &params(),
            p,
            ProfileMode::Exact,
            &GridPolicy::default(),
        )
        .unwrap();
        let traj = prof.trajectory().unwrap();
        let dv = traj.v_fin - traj.v_init;
        assert!(
            (prof.integral_a_dt - dv).abs() < 1e-10 * dv.abs(),
            "int a dt {} vs dv {}",
            prof.integral_a_dt,
            dv
        );
    }

    #[test]
    fn bump_accelerations_integrate_to_zero() {
        let (v0, p) = (5e-4, 0.08);
        let prof = acceleration_profile(
            &bump(v0),
            &params(),
            p,
            ProfileMode::Exact,
            &GridPolicy::default(),
        )
        .unwrap();
        assert!(prof.integral_a_dt.abs() < 1e-10 * (p / 1.0));
    }

    #[test]
    fn mode_agreement_contracts_quadratically_in_v0() {
        // max_t |a_exact - a_straight| should shrink ~4x when V0 halves
        let p = 0.08;
        let gap = |v0: f64| -> f64 {
            let ex = acceleration_profile(
                &step(v0),
                &params(),
                p,
                ProfileMode::Exact,
                &GridPolicy::default(),
            )
            .unwrap();
            let sl = acceleration_profile(
                &step(v0),
                &params(),
                p,
                ProfileMode::StraightLine,
                &GridPolicy::default(),
            )
            .unwrap();
            let (t0, t1) = sl.support();
            (0..2000)
                .map(|i| {
                    let t = t0 + (t1 - t0) * i as f64 / 1999.0;
                    (ex.eval(t) - sl.eval(t)).abs()
                })
                .fold(0.0f64, f64::max)
        };
        let g1 = gap(6.4e-5);
        let g2 = gap(3.2e-5);
        let ratio = g1 / g2;
        assert!((3.5..4.5).contains(&ratio), "contraction ratio {ratio:.3}");
    }

    #[test]
    fn gaussian_pulse_profile() {
        let prof = AccelerationProfile::gaussian_pulse(2.0e-5, 3.0, -40.0, 0.08, 2001).unwrap();
        let expect = 2.0e-5 * 3.0 * (2.0 * std::f64::consts::PI).sqrt();
        assert!((prof.integral_a_dt - expect).abs() < 1e-10 * expect);
        assert!((prof.eval(-40.0) - 2.0e-5).abs() < 1e-20);
        let (t0, t1) = prof.support();
        assert!(t1 < 0.0 && t0 < t1);
    }

    #[test]
    fn tabulated_roundtrip_and_errors() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pot.txt");
        // smooth step sampled far past its support so edge slopes vanish
        let mut text = String::from("# z V\n");
        let spec = PotentialSpec::SmoothStep {
            v0: 1e-3,
            length: 1.0,
            z0: 0.0,
        };
        for i in 0..=800 {
            let z = -40.0 + 80.0 * i as f64 / 800.0;
            text.push_str(&format!("{:.17e} {:.17e}\n", z, spec.v(z).unwrap()));
        }
        std::fs::write(&path, text).unwrap();
        let tab = TabulatedPotential::from_file(path.to_str().unwrap()).unwrap();
        assert_eq!(tab.n_knots(), 801);
        let tspec = PotentialSpec::Tabulated(tab);
        // interpolant tracks the sampled family (h = 0.1 -> spline err ~ 1e-8 of V0)
        for &z in &[-3.0, 0.0, 2.5] {
            let (v, _, _) = potential_eval(&tspec, z).unwrap();
            assert!((v - spec.v(z).unwrap()).abs() < 1e-8 * 1e-3);
        }
        // constant extrapolation outside (edge slope has died out)
        let (v, vp, _) = potential_eval(&tspec, 100.0).unwrap();
        assert!(v.abs() < 1e-9 && vp == 0.0);

        // a table cut mid-slope must refuse extrapolation and support windows
        let path2 = dir.path().join("cut.txt");
        let mut text2 = String::new();
        for i in 0..=100 {
            let z = -3.0 + 3.0 * i as f64 / 100.0;
            text2.push_str(&format!("{} {}\n", z, spec.v(z).unwrap()));
        }
        std::fs::write(&path2, text2).unwrap();
        let cut = PotentialSpec::Tabulated(
            TabulatedPotential::from_file(path2.to_str().unwrap()).unwrap(),
        );
        assert!(matches!(
            potential_eval(&cut, 50.0),
            Err(Error::TabulatedOutOfRange { .. })
        ));
        assert!(matches!(
            cut.slope_support_window(),
            Err(Error::SupportNotReached { .. })
        ));

        // malformed rows carry line context
        let path3 = dir.path().join("bad.txt");
        std::fs::write(&path3, "0.0 1.0\n1.0\n").unwrap();
        match TabulatedPotential::from_file(path3.to_str().unwrap()) {
            Err(Error::Parse { msg, .. }) => assert!(msg.contains("line 2")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}

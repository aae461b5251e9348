//! Piecewise-polynomial interpolants: natural cubic splines on arbitrary
//! strictly increasing grids, and quintic Hermite paths built from exact
//! nodal (value, first, second derivative) data.

/// Locate the panel index i such that x[i] <= xi <= x[i+1], clamped to the
/// grid range.
pub(crate) fn locate(x: &[f64], xi: f64) -> usize {
    let n = x.len();
    if xi <= x[0] {
        return 0;
    }
    if xi >= x[n - 1] {
        return n - 2;
    }
    // partition_point returns the first index with x[idx] > xi
    let idx = x.partition_point(|&v| v <= xi);
    (idx - 1).min(n - 2)
}

/// Natural cubic spline (second derivative zero at both ends). The natural
/// boundary condition is exact for compact-support signals, whose curvature
/// vanishes at the window edges.
#[derive(Debug, Clone)]
pub struct CubicSpline {
    x: Vec<f64>,
    /// Power-basis coefficients per panel: value = c0 + c1 u + c2 u^2 + c3 u^3
    /// with u = x - x[i].
    coeffs: Vec<[f64; 4]>,
}

impl CubicSpline {
    /// Build from knots. Panics if the grid is shorter than 2 or not strictly
    /// increasing; callers validate input via `SampledSignal` or potential
    /// knot parsing first.
    pub fn new(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        assert_eq!(n, y.len());
        assert!(n >= 2);
        assert!(x.windows(2).all(|w| w[1] > w[0]));

        if n == 2 {
            let h = x[1] - x[0];
            let c1 = (y[1] - y[0]) / h;
            return Self {
                x: x.to_vec(),
                coeffs: vec![[y[0], c1, 0.0, 0.0]],
            };
        }

        // Solve the tridiagonal system for nodal second derivatives m_i,
        // natural BC m_0 = m_{n-1} = 0 (Thomas algorithm).
        let mut m = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        let mut upper = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            diag[i] = (h0 + h1) / 3.0;
            upper[i] = h1 / 6.0;
            rhs[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
        }
        // forward sweep (lower[i] = h0/6 folded in on the fly)
        for i in 2..n - 1 {
            let h0 = x[i] - x[i - 1];
            let w = (h0 / 6.0) / diag[i - 1];
            diag[i] -= w * upper[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        for i in (1..n - 1).rev() {
            m[i] = (rhs[i] - upper[i] * m[i + 1]) / diag[i];
        }

        let mut coeffs = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let h = x[i + 1] - x[i];
            let c0 = y[i];
            let c2 = m[i] / 2.0;
            let c3 = (m[i + 1] - m[i]) / (6.0 * h);
            let c1 = (y[i + 1] - y[i]) / h - h * (2.0 * m[i] + m[i + 1]) / 6.0;
            coeffs.push([c0, c1, c2, c3]);
        }
        Self {
            x: x.to_vec(),
            coeffs,
        }
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    pub fn n_panels(&self) -> usize {
        self.coeffs.len()
    }

    pub fn panel_coeffs(&self, i: usize) -> [f64; 4] {
        self.coeffs[i]
    }

    pub fn panel_width(&self, i: usize) -> f64 {
        self.x[i + 1] - self.x[i]
    }

    /// Evaluate; outside the knot range the boundary value is held constant.
    pub fn eval(&self, xi: f64) -> f64 {
        let n = self.x.len();
        if xi <= self.x[0] {
            return self.coeffs[0][0];
        }
        if xi >= self.x[n - 1] {
            let i = n - 2;
            let u = self.x[n - 1] - self.x[i];
            let c = self.coeffs[i];
            return c[0] + u * (c[1] + u * (c[2] + u * c[3]));
        }
        let i = locate(&self.x, xi);
        let u = xi - self.x[i];
        let c = self.coeffs[i];
        c[0] + u * (c[1] + u * (c[2] + u * c[3]))
    }

    /// First derivative; zero outside the knot range.
    pub fn deriv(&self, xi: f64) -> f64 {
        let n = self.x.len();
        if xi < self.x[0] || xi > self.x[n - 1] {
            return 0.0;
        }
        let i = locate(&self.x, xi);
        let u = xi - self.x[i];
        let c = self.coeffs[i];
        c[1] + u * (2.0 * c[2] + u * 3.0 * c[3])
    }

    /// Second derivative; zero outside the knot range.
    pub fn deriv2(&self, xi: f64) -> f64 {
        let n = self.x.len();
        if xi < self.x[0] || xi > self.x[n - 1] {
            return 0.0;
        }
        let i = locate(&self.x, xi);
        let u = xi - self.x[i];
        let c = self.coeffs[i];
        2.0 * c[2] + u * 6.0 * c[3]
    }

    /// Exact integral of the spline over its full knot range.
    pub fn integral(&self) -> f64 {
        let mut total = 0.0;
        for i in 0..self.coeffs.len() {
            let h = self.x[i + 1] - self.x[i];
            let c = self.coeffs[i];
            total += h * (c[0] + h * (c[1] / 2.0 + h * (c[2] / 3.0 + h * c[3] / 4.0)));
        }
        total
    }
}

/// Quintic Hermite interpolant: per-panel degree-5 polynomial matching
/// value, first and second derivative at both panel ends. With exact nodal
/// derivatives the interpolation error is O(h^6).
#[derive(Debug, Clone)]
pub struct QuinticHermite {
    x: Vec<f64>,
    coeffs: Vec<[f64; 6]>,
}

impl QuinticHermite {
    /// `x` strictly increasing; `f`, `d` (first derivative), `s` (second
    /// derivative) sampled at the nodes.
    pub fn new(x: &[f64], f: &[f64], d: &[f64], s: &[f64]) -> Self {
        let n = x.len();
        assert!(n >= 2);
        assert!(x.windows(2).all(|w| w[1] > w[0]));
        assert!(f.len() == n && d.len() == n && s.len() == n);

        let mut coeffs = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let h = x[i + 1] - x[i];
            let (f0, d0, s0) = (f[i], d[i], s[i]);
            let (f1, d1, s1) = (f[i + 1], d[i + 1], s[i + 1]);
            let a = f1 - f0 - d0 * h - s0 * h * h / 2.0;
            let b = d1 - d0 - s0 * h;
            let c = s1 - s0;
            let h2 = h * h;
            let h3 = h2 * h;
            let c3 = (10.0 * a - 4.0 * b * h + c * h2 / 2.0) / h3;
            let c4 = (-15.0 * a + 7.0 * b * h - c * h2) / (h3 * h);
            let c5 = (6.0 * a - 3.0 * b * h + c * h2 / 2.0) / (h3 * h2);
            coeffs.push([f0, d0, s0 / 2.0, c3, c4, c5]);
        }
        Self {
            x: x.to_vec(),
            coeffs,
        }
    }

    pub fn eval(&self, xi: f64) -> f64 {
        let i = locate(&self.x, xi);
        let u = xi - self.x[i];
        let c = self.coeffs[i];
        c[0] + u * (c[1] + u * (c[2] + u * (c[3] + u * (c[4] + u * c[5]))))
    }

    pub fn deriv(&self, xi: f64) -> f64 {
        let i = locate(&self.x, xi);
        let u = xi - self.x[i];
        let c = self.coeffs[i];
        c[1] + u * (2.0 * c[2] + u * (3.0 * c[3] + u * (4.0 * c[4] + u * 5.0 * c[5])))
    }

    pub fn range(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }
}

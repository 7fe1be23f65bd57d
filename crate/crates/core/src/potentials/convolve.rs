use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fundsol::j_d_unchecked;
use crate::geometry::unit_sphere_area;
use crate::quadrature::{integrate_with_breaks, QuadOptions};

/// A density depending on the polar angle alone.
pub trait AxisymmetricProfile {
    fn rho(&self, theta: f64) -> f64;
    /// Angles where the profile or its derivatives jump.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
    /// Upper end of the support, pi when unbounded.
    fn support_end(&self) -> f64 {
        PI
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformCap {
    pub rho0: f64,
    pub theta0: f64,
}

impl AxisymmetricProfile for UniformCap {
    fn rho(&self, theta: f64) -> f64 {
        if theta <= self.theta0 {
            self.rho0
        } else {
            0.0
        }
    }
    fn breakpoints(&self) -> Vec<f64> {
        vec![self.theta0]
    }
    fn support_end(&self) -> f64 {
        self.theta0
    }
}

/// Piecewise-linear profile through `(theta[i], rho[i])`, zero outside the table.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    theta: Vec<f64>,
    rho: Vec<f64>,
}

impl Tabulated {
    pub fn new(theta: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        if theta.len() != rho.len() || theta.len() < 2 {
            return Err(Error::Argument("tabulated profile needs matching theta/rho arrays of length >= 2".into()));
        }
        if theta.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Argument("tabulated theta must be strictly increasing".into()));
        }
        if theta[0] < 0.0 || theta[theta.len() - 1] > PI {
            return Err(Error::Argument("tabulated theta must lie in [0, pi]".into()));
        }
        if rho.iter().any(|v| !v.is_finite()) {
            return Err(Error::Argument("tabulated rho must be finite".into()));
        }
        Ok(Self { theta, rho })
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }

    pub fn values(&self) -> &[f64] {
        &self.rho
    }
}

impl AxisymmetricProfile for Tabulated {
    fn rho(&self, t: f64) -> f64 {
        let n = self.theta.len();
        if t < self.theta[0] || t > self.theta[n - 1] {
            return 0.0;
        }
        let i = self.theta.partition_point(|&x| x <= t).clamp(1, n - 1);
        let (t0, t1) = (self.theta[i - 1], self.theta[i]);
        let w = (t - t0) / (t1 - t0);
        self.rho[i - 1] * (1.0 - w) + self.rho[i] * w
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.theta.clone()
    }
    fn support_end(&self) -> f64 {
        self.theta[self.theta.len() - 1]
    }
}

/// Closure-backed profile.
pub struct FnProfile<F: Fn(f64) -> f64> {
    pub f: F,
    pub breaks: Vec<f64>,
    pub support_end: f64,
}

impl<F: Fn(f64) -> f64> AxisymmetricProfile for FnProfile<F> {
    fn rho(&self, theta: f64) -> f64 {
        (self.f)(theta)
    }
    fn breakpoints(&self) -> Vec<f64> {
        self.breaks.clone()
    }
    fn support_end(&self) -> f64 {
        self.support_end
    }
}

fn partition(lo: f64, hi: f64, extra: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut pts = vec![lo, hi];
    pts.extend(extra.into_iter().filter(|&t| t > lo && t < hi));
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

fn check(d: usize, r: f64, theta: f64) -> Result<()> {
    if d < 2 {
        return Err(Error::domain("d", d as f64, "dimension must be at least 2"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("R", r, "radius must be positive"));
    }
    if !(0.0..PI).contains(&theta) {
        return Err(Error::domain("theta", theta, "polar angle must lie in [0, pi)"));
    }
    Ok(())
}

/// Phi(theta) = R^2 int_0^pi J_d(max(theta, theta')) rho(theta') sin^(d-1)(theta') dtheta'.
pub fn convolve_axisymmetric<P: AxisymmetricProfile + ?Sized>(d: usize, r: f64, profile: &P, theta: f64) -> Result<f64> {
    check(d, r, theta)?;
    let p = d as i32 - 1;
    let f = |tp: f64| {
        let s = tp.sin();
        if s == 0.0 {
            return 0.0;
        }
        profile.rho(tp) * j_d_unchecked(d, theta.max(tp)) * s.powi(p)
    };
    let pts = partition(0.0, profile.support_end().min(PI), profile.breakpoints().into_iter().chain([theta]));
    let i = integrate_with_breaks(f, &pts, QuadOptions { abs_tol: 1e-15, rel_tol: 1e-13, max_intervals: 4000 })?;
    if !i.value.is_finite() {
        return Err(Error::Quadrature("non-integrable density profile".into()));
    }
    Ok(r * r * i.value)
}

/// (1/2) int rho Phi dvol with Phi from [`convolve_axisymmetric`].
pub fn binding_by_quadrature<P: AxisymmetricProfile + ?Sized>(d: usize, r: f64, profile: &P) -> Result<f64> {
    check(d, r, 0.0)?;
    let p = d as i32 - 1;
    let mut err = None;
    let f = |t: f64| {
        let rho = profile.rho(t);
        if rho == 0.0 {
            return 0.0;
        }
        match convolve_axisymmetric(d, r, profile, t) {
            Ok(phi) => rho * phi * t.sin().powi(p),
            Err(e) => {
                err.get_or_insert(e);
                f64::NAN
            }
        }
    };
    let pts = partition(0.0, profile.support_end().min(PI), profile.breakpoints());
    let i = integrate_with_breaks(f, &pts, QuadOptions { abs_tol: 1e-15, rel_tol: 1e-11, max_intervals: 2000 });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(0.5 * unit_sphere_area(d) * r.powi(d as i32) * i?.value)
}

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::DeltaSource;
use crate::error::{Error, Result};
use crate::fundsol::{j_d_unchecked, KERNEL_GUARD};
use crate::quadrature::{integrate, integrate_with_breaks, QuadOptions};
use crate::specfun::{factorial, gamma};

/// A potential together with the smooth part of -Laplacian(potential); delta pieces
/// are reported structurally.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuperintegrablePair {
    pub potential: f64,
    pub density: f64,
    pub delta: Option<DeltaSource>,
}

/// Two sides of a definite-integral identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub d: usize,
    pub theta: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub quad_error: f64,
}

impl IdentityCheck {
    pub fn abs_diff(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

fn check_common(d: usize, r: f64, alpha: f64, theta: f64) -> Result<()> {
    if d < 2 {
        return Err(Error::domain("d", d as f64, "dimension must be at least 2"));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("R", r, "radius must be positive"));
    }
    if !(alpha.abs() > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("alpha", alpha, "coupling must be non-zero"));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain("theta", theta, "polar angle must lie in [0, pi]"));
    }
    Ok(())
}

/// Isotropic oscillator: Phi = alpha tan^2(theta),
/// rho = -2 alpha (1 + tan^2)(3 tan^2 + d) / R^2.
pub fn oscillator_pair(d: usize, r: f64, alpha: f64, theta: f64) -> Result<SuperintegrablePair> {
    check_common(d, r, alpha, theta)?;
    if (theta - FRAC_PI_2).abs() < KERNEL_GUARD {
        return Err(Error::singular("theta", theta, "tan diverges at the equator"));
    }
    let t2 = theta.tan().powi(2);
    Ok(SuperintegrablePair {
        potential: alpha * t2,
        density: -2.0 * alpha / (r * r) * (1.0 + t2) * (3.0 * t2 + d as f64),
        delta: None,
    })
}

/// Kepler-Coulomb: Phi = -alpha cot(theta), rho = (3 - d) alpha cot (1 + cot^2) / R^2 for d >= 3.
/// For d = 2 the regularized pair with angle `epsilon` is returned (Phi = alpha cot + constant,
/// smooth density -alpha cot (1 + cot^2) / R^2 plus a delta at theta = 0 of coefficient
/// 2 alpha / sin(epsilon)). d = 3 carries the point source -4 pi R alpha at theta = 0.
pub fn kepler_pair(d: usize, r: f64, alpha: f64, theta: f64, epsilon: Option<f64>) -> Result<SuperintegrablePair> {
    check_common(d, r, alpha, theta)?;
    if theta < KERNEL_GUARD || PI - theta < KERNEL_GUARD {
        return Err(Error::singular("theta", theta, "cot diverges at the poles"));
    }
    let c = 1.0 / theta.tan();
    let shape = c * (1.0 + c * c) / (r * r);
    if d == 2 {
        let eps = match epsilon {
            Some(e) if e > 0.0 && e < FRAC_PI_2 => e,
            Some(e) => return Err(Error::domain("epsilon", e, "regularization angle must lie in (0, pi/2)")),
            None => return Err(Error::Argument("d = 2 Kepler pair needs epsilon".into())),
        };
        let potential = alpha * c + alpha / eps.tan() + alpha / eps.sin() * (0.5 * eps).tan().ln();
        return Ok(SuperintegrablePair {
            potential,
            density: -alpha * shape,
            delta: Some(DeltaSource { theta: 0.0, strength: 2.0 * alpha / eps.sin() }),
        });
    }
    let delta = (d == 3).then(|| DeltaSource { theta: 0.0, strength: -4.0 * PI * r * alpha });
    Ok(SuperintegrablePair { potential: -alpha * c, density: (3.0 - d as f64) * alpha * shape, delta })
}

fn kappa(d: usize) -> f64 {
    gamma(d as f64 / 2.0) * 2f64.powf(d as f64 / 2.0 - 1.0) / factorial(d as u32 - 2)
}

/// Q^{1-d/2}_{d/2-1}(cos t) sin^{d/2}(t) = kappa sin^(d-1)(t) J_d(t).
fn q_sin(d: usize, t: f64) -> f64 {
    kappa(d) * t.sin().powi(d as i32 - 1) * j_d_unchecked(d, t)
}

fn q_ferrers(d: usize, t: f64) -> f64 {
    kappa(d) * t.sin().powf(d as f64 / 2.0 - 1.0) * j_d_unchecked(d, t)
}

const IDENTITY_OPTS: QuadOptions = QuadOptions { abs_tol: 1e-14, rel_tol: 1e-13, max_intervals: 4000 };

/// Oscillator identity: int_theta^pi Q(cos t)(1 + tan^2 t)(3 tan^2 t + d) sin^{d/2} t dt.
/// The integrand is odd about pi/2, so for theta < pi/2 the principal value reduces to
/// the integral over [pi - theta, pi].
pub fn oscillator_identity(d: usize, theta: f64) -> Result<IdentityCheck> {
    if d < 2 {
        return Err(Error::domain("d", d as f64, "dimension must be at least 2"));
    }
    if !(theta > 0.0 && theta < PI) || (theta - FRAC_PI_2).abs() < KERNEL_GUARD {
        return Err(Error::domain("theta", theta, "need theta in (0, pi) away from pi/2"));
    }
    let f = |t: f64| {
        let t2 = t.tan().powi(2);
        q_sin(d, t) * (1.0 + t2) * (3.0 * t2 + d as f64)
    };
    let lo = if theta < FRAC_PI_2 { PI - theta } else { theta };
    let i = integrate(f, lo, PI, IDENTITY_OPTS)?;
    let tn = theta.tan();
    let rhs = -tn * (1.0 + tn * tn) * theta.sin().powf(d as f64 / 2.0) * q_ferrers(d, theta)
        - 2f64.powf(d as f64 / 2.0 - 2.0) * gamma(d as f64 / 2.0) * tn * tn / factorial(d as u32 - 2);
    Ok(IdentityCheck { d, theta, lhs: i.value, rhs, quad_error: i.abs_error })
}

/// Kepler identity for d in {4, 5}: Hadamard finite part at t = pi of
/// int_theta^pi Q(cos t)(1 + cot^2 t) cot t sin^{d/2} t dt.
pub fn kepler_identity(d: usize, theta: f64) -> Result<IdentityCheck> {
    if !(d == 4 || d == 5) {
        return Err(Error::domain("d", d as f64, "identity is stated for d = 4, 5"));
    }
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::domain("theta", theta, "need theta in (0, pi)"));
    }
    let k = kappa(d);
    let dm2 = d as f64 - 2.0;
    // with s = pi - t the integrand is k/(d-2) cot^2 s + k (d-3)/(d-2) cos s sin^{d-4} s J_{d-2}(s);
    // the 1/s^2 part of cot^2 s is taken analytically
    let h = |s: f64| {
        let c = if s < 1e-3 {
            let s2 = s * s;
            -s * (1.0 / 3.0 + s2 * (1.0 / 45.0 + s2 * 2.0 / 945.0))
        } else {
            1.0 / s.tan() - 1.0 / s
        };
        k / dm2 * c * (c + 2.0 / s) + k * (d as f64 - 3.0) / dm2 * s.cos() * s.sin().powi(d as i32 - 4) * j_d_unchecked(d - 2, s)
    };
    let upper = PI - theta;
    let pts: Vec<f64> = if upper > FRAC_PI_2 { vec![0.0, FRAC_PI_2, upper] } else { vec![0.0, upper] };
    let i = integrate_with_breaks(h, &pts, IDENTITY_OPTS)?;
    let lhs = i.value - k / (dm2 * upper);
    let ct = 1.0 / theta.tan();
    let rhs = -theta.sin().powf(d as f64 / 2.0 - 2.0) * q_ferrers(d, theta) / (d as f64 - 3.0)
        + 2f64.powf(d as f64 / 2.0 - 1.0) * gamma(d as f64 / 2.0) * ct / ((d as f64 - 3.0) * factorial(d as u32 - 2));
    Ok(IdentityCheck { d, theta, lhs, rhs, quad_error: i.abs_error })
}

#[cfg(test)]
mod tests {
    use super::super::radial_laplacian;
    use super::*;

    #[test]
    fn pair_values() {
        let o = oscillator_pair(3, 2.0, 1.5, 0.0).unwrap();
        assert_eq!((o.potential, o.density), (0.0, -2.0 * 1.5 * 3.0 / 4.0));
        assert!(oscillator_pair(3, 1.0, 1.0, FRAC_PI_2).is_err());
        let k = kepler_pair(4, 1.0, 1.0, FRAC_PI_2, None).unwrap();
        assert!(k.potential.abs() < 1e-15 && k.density.abs() < 1e-15);
        assert_eq!(kepler_pair(3, 1.0, 1.0, 0.4, None).unwrap().density, 0.0);
        assert!(kepler_pair(2, 1.0, 1.0, 0.4, None).is_err());
        assert!(kepler_pair(5, 1.0, 1.0, 0.0, None).is_err());
    }

    #[test]
    fn poisson_residuals() {
        for d in 2..=5 {
            for &t in &[0.3, 0.7, 1.2, 2.0] {
                let r = 1.7;
                let lap = radial_laplacian(|x| oscillator_pair(d, r, 0.8, x).unwrap().potential, d, r, t, 1e-3);
                let rho = oscillator_pair(d, r, 0.8, t).unwrap().density;
                assert!((-lap - rho).abs() < 1e-5 * rho.abs().max(1.0), "osc {d} {t}");
                let eps = if d == 2 { Some(1e-3) } else { None };
                let lap = radial_laplacian(|x| kepler_pair(d, r, 0.8, x, eps).unwrap().potential, d, r, t, 1e-3);
                let rho = kepler_pair(d, r, 0.8, t, eps).unwrap().density;
                assert!((-lap - rho).abs() < 1e-5 * rho.abs().max(1.0), "kep {d} {t} {lap} {rho}");
            }
        }
    }

    #[test]
    fn identities() {
        for d in 2..=5 {
            for &t in &[0.3, 0.7, 1.2, 2.0] {
                let c = oscillator_identity(d, t).unwrap();
                assert!(c.abs_diff() < 1e-7 * (1.0 + c.rhs.abs()), "{c:?}");
            }
        }
        for d in 4..=5 {
            for &t in &[0.3, 0.7, 1.2, 2.0] {
                let c = kepler_identity(d, t).unwrap();
                assert!(c.abs_diff() < 1e-7 * (1.0 + c.rhs.abs()), "{c:?}");
            }
        }
    }
}

//! The fundamental solution G_R^d of the Laplace-Beltrami operator on S_R^d, its
//! normalised form g^d, and the Euclidean Newtonian kernel N^d.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{geodesic_distance, SpherePoint};
use crate::specfun::{factorial, ferrers_q, gamma, FerrersIndex};

/// Angles within this distance of 0 or pi are treated as the kernel singularities.
pub const KERNEL_GUARD: f64 = 1e-8;

/// A kernel value with the data that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub value: f64,
    pub d: usize,
    #[serde(rename = "R")]
    pub r: f64,
    pub theta_sep: f64,
}

fn check_dim(d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::domain("d", d as f64, "dimension must be at least 2"));
    }
    Ok(())
}

fn check_theta(theta: f64) -> Result<()> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain("Theta", theta, "geodesic angle must lie in (0, pi)"));
    }
    if theta < KERNEL_GUARD {
        return Err(Error::singular("Theta", theta, "coincident points"));
    }
    if PI - theta < KERNEL_GUARD {
        return Err(Error::singular("Theta", theta, "antipodal points"));
    }
    Ok(())
}

/// J_d(Theta) = int_Theta^{pi/2} dx / sin^{d-1} x, by the two-step reduction in d.
pub fn j_d(d: usize, theta: f64) -> Result<f64> {
    check_dim(d)?;
    check_theta(theta)?;
    Ok(j_d_unchecked(d, theta))
}

pub(crate) fn j_d_unchecked(d: usize, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let base = if d.is_multiple_of(2) {
        (1.0 / (0.5 * theta).tan()).ln()
    } else {
        FRAC_PI_2 - theta
    };
    reduce(d, c, s, base)
}

/// J_d from cos(Theta) alone; sin(Theta) is taken as sqrt((1 - c)(1 + c)).
pub fn j_d_from_cos(d: usize, c: f64) -> Result<f64> {
    check_dim(d)?;
    if !(c.abs() < 1.0) {
        return Err(Error::singular("cos Theta", c, "kernel singular at cos Theta = +-1"));
    }
    let s = ((1.0 - c) * (1.0 + c)).sqrt();
    let base = if d.is_multiple_of(2) { c.atanh() } else { c.asin() };
    Ok(reduce(d, c, s, base))
}

// J_k = c / ((k-2) s^{k-2}) + (k-3)/(k-2) J_{k-2}, starting from J_1 or J_2.
fn reduce(d: usize, c: f64, s: f64, base: f64) -> f64 {
    let mut k = if d.is_multiple_of(2) { 2 } else { 1 };
    let mut j = base;
    let mut spow = 1.0; // sin^{k-2}
    while k < d {
        k += 2;
        spow = if k == 3 { s } else { spow * s * s };
        let kf = k as f64;
        j = c / ((kf - 2.0) * spow) + (kf - 3.0) / (kf - 2.0) * j;
    }
    j
}

/// J_d through the Ferrers function Q_{d/2-1}^{1-d/2}.
pub fn j_d_ferrers(d: usize, theta: f64) -> Result<f64> {
    check_dim(d)?;
    check_theta(theta)?;
    let nu = d as f64 / 2.0 - 1.0;
    let q = ferrers_q(FerrersIndex::new(nu, -nu), theta.cos())?;
    let pref = factorial(d as u32 - 2) / (gamma(nu + 1.0) * 2f64.powf(nu));
    Ok(pref * q / theta.sin().powf(nu))
}

/// 2 pi^{d/2} R^{d-2} / Gamma(d/2): the factor taking G_R^d to g^d.
pub fn normalization(d: usize, r: f64) -> f64 {
    let h = d as f64 / 2.0;
    2.0 * PI.powf(h) * r.powi(d as i32 - 2) / gamma(h)
}

/// G_R^d as a function of the geodesic angle.
pub fn greens_from_angle(d: usize, r: f64, theta: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain("R", r, "radius must be positive"));
    }
    Ok(j_d(d, theta)? / normalization(d, r))
}

/// G_R^d(p, q).
pub fn greens(d: usize, r: f64, p: &SpherePoint, q: &SpherePoint) -> Result<KernelValue> {
    if p.dim() != d || q.dim() != d {
        return Err(Error::Argument(format!(
            "points live on S^{} and S^{}, expected S^{d}",
            p.dim(),
            q.dim()
        )));
    }
    if (p.radius() - r).abs() > 1e-12 * r {
        return Err(Error::Argument(format!("point radius {} differs from R = {r}", p.radius())));
    }
    let sep = geodesic_distance(p, q)?;
    Ok(KernelValue {
        value: greens_from_angle(d, r, sep.theta)?,
        d,
        r,
        theta_sep: sep.theta,
    })
}

/// Newtonian kernel N^d(x, y) on R^d.
pub fn newtonian_euclidean(d: usize, x: &[f64], y: &[f64]) -> Result<f64> {
    check_dim(d)?;
    if x.len() != d || y.len() != d {
        return Err(Error::Argument(format!(
            "points of length {} and {} for d = {d}",
            x.len(),
            y.len()
        )));
    }
    let dist = x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    newtonian_from_distance(d, dist)
}

/// N^d as a function of the separation.
pub fn newtonian_from_distance(d: usize, dist: f64) -> Result<f64> {
    check_dim(d)?;
    if !(dist > 0.0) {
        return Err(Error::singular("|x - y|", dist, "coincident points"));
    }
    if d == 2 {
        return Ok(-dist.ln() / (2.0 * PI));
    }
    let h = d as f64 / 2.0;
    Ok(gamma(h) / (2.0 * PI.powf(h) * (d as f64 - 2.0)) * dist.powi(2 - d as i32))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadOptions};

    fn j_quad(d: usize, t: f64) -> f64 {
        let f = |x: f64| 1.0 / x.sin().powi(d as i32 - 1);
        let o = QuadOptions::tol(0.0, 1e-14);
        if t <= FRAC_PI_2 {
            integrate(f, t, FRAC_PI_2, o).unwrap().value
        } else {
            -integrate(f, FRAC_PI_2, t, o).unwrap().value
        }
    }

    #[test]
    fn base_cases() {
        for d in 2..=9 {
            assert!(j_d(d, FRAC_PI_2).unwrap().abs() < 1e-15);
        }
        let t = 0.9;
        assert!((j_d(2, t).unwrap() - (1.0 / (t / 2.0).tan()).ln()).abs() < 1e-15);
        assert!((j_d(3, t).unwrap() - 1.0 / t.tan()).abs() < 1e-15);
        assert!((j_d(5, 0.7).unwrap() - j_quad(5, 0.7)).abs() < 1e-11 * j_quad(5, 0.7).abs());
        for d in 2..=8 {
            for &t in &[0.2, 1.1, 2.3, 3.0] {
                let v = j_d(d, t).unwrap();
                assert!((v - j_quad(d, t)).abs() < 1e-11 * (1.0 + v.abs()), "{d} {t}");
            }
        }
    }

    #[test]
    fn guard_band() {
        assert!(matches!(j_d(3, 1e-9), Err(Error::Singularity { .. })));
        assert!(matches!(j_d(3, PI - 1e-9), Err(Error::Singularity { .. })));
        assert!(matches!(j_d(3, -0.1), Err(Error::Domain { .. })));
        assert!(j_d(1, 0.3).is_err());
        assert!(j_d(2, PI - 1e-6).unwrap() < -14.0);
    }

    #[test]
    fn from_cos() {
        for d in 2..=7 {
            for &t in &[0.2, 1.0, 2.5] {
                let a = j_d(d, t).unwrap();
                let b = j_d_from_cos(d, t.cos()).unwrap();
                assert!((a - b).abs() < 1e-13 * a.abs().max(1.0));
            }
        }
        assert!(j_d_from_cos(3, 1.0).is_err());
    }

    #[test]
    fn antisymmetry() {
        for d in 2..=7 {
            for &t in &[0.1, 0.5, 1.3] {
                let a = j_d(d, t).unwrap();
                let b = j_d(d, PI - t).unwrap();
                assert!((a + b).abs() < 1e-12 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn route_equivalence() {
        for d in 2..=8 {
            for i in 0..50 {
                let t = 0.05 + (PI - 0.1) * i as f64 / 49.0;
                let a = j_d(d, t).unwrap();
                let b = j_d_ferrers(d, t).unwrap();
                assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-3), "d={d} t={t}: {a} {b}");
            }
        }
    }

    #[test]
    fn derivative_identity() {
        let h = 1e-5;
        for d in 2..=7 {
            for &t in &[0.3, 1.0, 2.0, 2.7] {
                let fd = (j_d(d, t + h).unwrap() - j_d(d, t - h).unwrap()) / (2.0 * h);
                let ex = -1.0 / t.sin().powi(d as i32 - 1);
                assert!(((fd - ex) / ex).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn kernel_values() {
        assert!((normalization(2, 5.0) - 2.0 * PI).abs() < 1e-14);
        assert!((normalization(3, 2.0) - 8.0 * PI).abs() < 1e-13);
        assert!((normalization(5, 1.0) - 2.0 * PI.powf(2.5) / gamma(2.5)).abs() < 1e-13);
        assert!(greens_from_angle(3, 1.0, FRAC_PI_2).unwrap().abs() < 1e-17);
        let t = 0.8;
        let g2 = greens_from_angle(2, 1.0, t).unwrap();
        assert!((g2 - (1.0 / (t / 2.0).tan()).ln() / (2.0 * PI)).abs() < 1e-15);
        let p = SpherePoint::new(2.0, 0.4, vec![1.0, 0.3], 0.2).unwrap();
        let q = SpherePoint::new(2.0, 1.9, vec![0.5, 2.0], -1.4).unwrap();
        let k = greens(4, 2.0, &p, &q).unwrap();
        let ex = j_quad(4, k.theta_sep) / (2.0 * PI * PI * 4.0);
        assert!((k.value - ex).abs() < 1e-12 * ex.abs());
        let k2 = greens(4, 2.0, &q, &p).unwrap();
        assert_eq!(k.value, k2.value);
        assert!(matches!(greens(4, 2.0, &p, &p), Err(Error::Singularity { .. })));
        assert!(greens(3, 2.0, &p, &q).is_err());
    }

    #[test]
    fn euclidean() {
        let o = [0.0, 0.0, 0.0];
        assert!((newtonian_euclidean(3, &o, &[1.0, 0.0, 0.0]).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(newtonian_euclidean(2, &[0.0, 0.0], &[0.0, 1.0]).unwrap(), 0.0);
        let v = newtonian_from_distance(5, 2.0).unwrap();
        assert!((v - gamma(2.5) / (6.0 * PI.powf(2.5)) / 8.0).abs() < 1e-13 * v);
        assert!(newtonian_euclidean(3, &o, &o).is_err());
    }

    #[test]
    fn flat_limit() {
        let r = 0.7;
        for d in 2..=5 {
            let mut prev = f64::INFINITY;
            for &big in &[1e2, 1e3, 1e4] {
                let g = greens_from_angle(d, big, r / big).unwrap();
                let dev = if d == 2 {
                    (g - (2.0 * big / r).ln() / (2.0 * PI)).abs()
                } else {
                    let n = newtonian_from_distance(d, r).unwrap();
                    ((g - n) / n).abs()
                };
                assert!(dev < prev / 50.0);
                prev = dev;
            }
        }
    }
}

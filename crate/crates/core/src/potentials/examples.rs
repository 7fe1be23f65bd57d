use std::f64::consts::PI;

use super::{Branch, PotentialValue};
use crate::error::{Error, Result};
use crate::geometry::HopfPoint;
use crate::quadrature::{integrate_with_breaks, QuadOptions};

fn check_amp(rho0: f64) -> Result<()> {
    if !(rho0.abs() > 0.0) || !rho0.is_finite() {
        return Err(Error::domain("rho0", rho0, "amplitude must be non-zero"));
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("R", r, "radius must be positive"));
    }
    Ok(())
}

fn check_cap(theta0: f64, theta: f64) -> Result<()> {
    if !(theta0 > 0.0 && theta0 < PI) {
        return Err(Error::domain("theta0", theta0, "cap radius must lie in (0, pi)"));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::domain("theta", theta, "polar angle must lie in [0, pi]"));
    }
    if theta == PI {
        return Err(Error::singular("theta", theta, "potential diverges at the antipode of the centre"));
    }
    Ok(())
}

fn log_cot_half(t: f64) -> f64 {
    (1.0 / (0.5 * t).tan()).ln()
}

fn ln_cos(x: f64) -> f64 {
    0.5 * (-x.sin().powi(2)).ln_1p()
}

// theta cot(theta) - 1
fn tcot_m1(t: f64) -> f64 {
    if t.abs() < 0.1 {
        let u = t * t;
        -u * (1.0 / 3.0 + u * (1.0 / 45.0 + u * (2.0 / 945.0 + u * (1.0 / 4725.0 + u * 2.0 / 93555.0))))
    } else {
        t / t.tan() - 1.0
    }
}

// x - sin(x) cos(x) = (y - sin y) / 2 with y = 2x
fn x_minus_sin_cos(x: f64) -> f64 {
    let y = 2.0 * x;
    if y < 0.2 {
        let u = y * y;
        0.5 * y * u * (1.0 / 6.0 - u * (1.0 / 120.0 - u * (1.0 / 5040.0 - u * (1.0 / 362880.0 - u / 39916800.0))))
    } else {
        0.5 * (y - y.sin())
    }
}

/// Potential of a uniform density cap of angular radius theta0 on S_R^2.
pub fn potential_2disc(rho0: f64, r: f64, theta0: f64, theta: f64) -> Result<PotentialValue> {
    check_amp(rho0)?;
    check_radius(r)?;
    check_cap(theta0, theta)?;
    let s = rho0 * r * r;
    let (value, branch) = if theta <= theta0 {
        // log cot(t/2) + log sin(t) = log(1 + cos t) = log 2 + 2 log cos(t/2); written so that
        // no O(log R) terms cancel when theta, theta0 are small
        let v0 = 2.0 * (0.5 * theta0).sin().powi(2);
        (
            s * (2.0 * ln_cos(0.5 * theta) - 2.0 * ln_cos(0.5 * theta0) + v0 * log_cot_half(theta0)),
            Branch::Interior,
        )
    } else {
        (s * 2.0 * (0.5 * theta0).sin().powi(2) * log_cot_half(theta), Branch::Exterior)
    };
    Ok(PotentialValue { value, branch, d: 2, r })
}

/// The constant removed from the 2-disc potential before the flat limit:
/// rho0 R^2 (1 - cos theta0) log(2R), i.e. (M / 2 pi) log(2R) with M the exact mass
/// (-> rho0 r0^2 log(2R) / 2).
pub fn c_r_2disc(rho0: f64, r: f64, theta0: f64) -> f64 {
    rho0 * r * r * 2.0 * (0.5 * theta0).sin().powi(2) * (2.0 * r).ln()
}

/// Binding energy (1/2) int rho Phi dvol of the uniform 2-disc.
pub fn binding_2disc(rho0: f64, r: f64, theta0: f64) -> Result<f64> {
    check_amp(rho0)?;
    check_radius(r)?;
    check_cap(theta0, 0.0)?;
    if theta0 < 1e-2 {
        // the bracket cancels to O(t^4 log t); expansion about t = 0
        let t = theta0;
        let v = 2.0 * (0.5 * t).sin().powi(2);
        let t4 = t.powi(4);
        let e = PI * v * v * (2.0 / t).ln() + PI * t4 * (1.0 / 16.0 - t * t / 48.0 + 11.0 * t4 / 4608.0);
        return Ok(rho0 * rho0 * r.powi(4) * e);
    }
    let c = theta0.cos();
    let bracket = (1.0 - 4.0 * c + (2.0 * theta0).cos()) * log_cot_half(theta0)
        - 4.0 * (0.5 * theta0).cos().ln()
        - 2.0 * theta0.sin().ln()
        + 2.0 * c
        + 2.0 * (2f64.ln() - 1.0);
    Ok(0.5 * PI * rho0 * rho0 * r.powi(4) * bracket)
}

/// Uniform disc of radius r0 in R^2; with `curvature_radius` the first curvature
/// correction of the sphere result (after removing c_R M / 2) is included.
pub fn binding_2disc_euclidean(rho0: f64, r0: f64, curvature_radius: Option<f64>) -> f64 {
    let mut b = 1.0 - 4.0 * r0.ln();
    if let Some(big) = curvature_radius {
        b += r0 * r0 / (3.0 * big * big) * (2.0 * r0.ln() - 1.0);
    }
    PI / 16.0 * rho0 * rho0 * r0.powi(4) * b
}

/// Potential of a uniform disc of radius r0 in R^2.
pub fn potential_2disc_euclidean(rho0: f64, r0: f64, rr: f64) -> PotentialValue {
    let (value, branch) = if rr <= r0 {
        (-0.25 * rho0 * (rr * rr - r0 * r0 + 2.0 * r0 * r0 * r0.ln()), Branch::Interior)
    } else {
        (-0.5 * rho0 * r0 * r0 * rr.ln(), Branch::Exterior)
    };
    PotentialValue { value, branch, d: 2, r: f64::INFINITY }
}

/// Potential of a uniform density ball of angular radius theta0 on S_R^3.
pub fn potential_3ball(rho0: f64, r: f64, theta0: f64, theta: f64) -> Result<PotentialValue> {
    check_amp(rho0)?;
    check_radius(r)?;
    check_cap(theta0, theta)?;
    let s = 0.5 * rho0 * r * r;
    let (value, branch) = if theta <= theta0 {
        (s * (tcot_m1(theta) + theta0.sin().powi(2)), Branch::Interior)
    } else {
        (s * x_minus_sin_cos(theta0) / theta.tan(), Branch::Exterior)
    };
    Ok(PotentialValue { value, branch, d: 3, r })
}

/// Binding energy of the uniform 3-ball.
pub fn binding_3ball(rho0: f64, r: f64, theta0: f64) -> Result<f64> {
    check_amp(rho0)?;
    check_radius(r)?;
    check_cap(theta0, 0.0)?;
    let t = theta0;
    let bracket = if t < 1e-2 {
        // the closed form cancels to O(t^5); use its Maclaurin series
        let t2 = t * t;
        t.powi(5) * (64.0 / 15.0 - 832.0 / 315.0 * t2 + 1216.0 / 1575.0 * t2 * t2 - 7424.0 / 51975.0 * t2 * t2 * t2)
    } else {
        -4.0 * t + 4.0 * (2.0 * t).sin() + (4.0 * t).sin() - 8.0 * t * (2.0 * t).cos()
    };
    Ok(PI / 16.0 * rho0 * rho0 * r.powi(5) * bracket)
}

/// Uniform ball of radius r0 in R^3, optionally with the first curvature correction.
pub fn binding_3ball_euclidean(rho0: f64, r0: f64, curvature_radius: Option<f64>) -> f64 {
    let corr = curvature_radius.map_or(1.0, |big| 1.0 - 13.0 / 21.0 * r0 * r0 / (big * big));
    4.0 * PI / 15.0 * rho0 * rho0 * r0.powi(5) * corr
}

pub fn potential_3ball_euclidean(rho0: f64, r0: f64, rr: f64) -> PotentialValue {
    let (value, branch) = if rr <= r0 {
        (rho0 / 6.0 * (3.0 * r0 * r0 - rr * rr), Branch::Interior)
    } else {
        (rho0 * r0.powi(3) / (3.0 * rr), Branch::Exterior)
    };
    PotentialValue { value, branch, d: 3, r: f64::INFINITY }
}

/// Potential of a uniform circular curve segment (vartheta = 0, |phi_1| <= varphi) on S_R^3:
/// (rho0/2) [asinh(cot(vartheta) sin(phi_1 + varphi)) - asinh(cot(vartheta) sin(phi_1 - varphi))].
pub fn potential_curve_segment(rho0: f64, r: f64, varphi: f64, p: &HopfPoint) -> Result<f64> {
    check_amp(rho0)?;
    check_radius(r)?;
    if (p.radius() - r).abs() > 1e-12 * r {
        return Err(Error::Argument(format!("point radius {} differs from R = {r}", p.radius())));
    }
    if !(varphi > 0.0 && varphi <= PI) {
        return Err(Error::domain("varphi", varphi, "half-length must lie in (0, pi]"));
    }
    let (sp, sm) = ((p.phi1() + varphi).sin(), (p.phi1() - varphi).sin());
    let vt = p.vartheta();
    if vt == 0.0 {
        // on the curve's own great circle: finite only off the segment and its antipodal image
        if sp == 0.0 || sm == 0.0 || sp.signum() != sm.signum() || varphi == PI {
            return Err(Error::singular("vartheta", vt, "point lies on the source curve or its antipodal image"));
        }
        return Ok(0.5 * rho0 * sp.signum() * (sp.abs() / sm.abs()).ln());
    }
    let k = 1.0 / vt.tan();
    Ok(0.5 * rho0 * ((k * sp).asinh() - (k * sm).asinh()))
}

/// Direct quadrature of the curve-segment potential over phi_1'.
pub fn curve_segment_quadrature(rho0: f64, varphi: f64, vartheta: f64, phi1: f64) -> Result<f64> {
    let k = 1.0 / vartheta.tan();
    let f = |q: f64| {
        let s = (phi1 - q).sin();
        (phi1 - q).cos() / (1.0 + k * k * s * s).sqrt()
    };
    let mut pts = vec![-varphi, varphi];
    for c in [phi1, phi1 - PI, phi1 + PI] {
        if c > -varphi && c < varphi {
            pts.push(c);
        }
    }
    pts.sort_by(f64::total_cmp);
    let i = integrate_with_breaks(f, &pts, QuadOptions::tol(1e-15, 1e-13))?;
    Ok(0.5 * rho0 * k * i.value)
}

/// Uniform line segment z' in [-L, L] in R^3 at cylindrical (r, z).
pub fn potential_line_segment_euclidean(rho0: f64, l: f64, rr: f64, z: f64) -> f64 {
    0.5 * rho0 * (((z + l) / rr).asinh() - ((z - l) / rr).asinh())
}

//! Standard hyperspherical and Hopf coordinates on S_R^d, geodesic separation, the
//! azimuthal split cos(Theta) = A_d + B_d cos(phi - phi'), and the volume density.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inner products may overshoot [-1, 1] by at most this much before it counts as an error.
pub const CLAMP_TOL: f64 = 1e-9;

fn wrap_angle(phi: f64) -> f64 {
    let w = (phi + PI).rem_euclid(2.0 * PI) - PI;
    if w >= PI {
        -PI
    } else {
        w
    }
}

fn check_angle(name: &'static str, v: f64, hi: f64) -> Result<()> {
    if !(v >= 0.0 && v <= hi) {
        return Err(Error::domain(name, v, "angle out of range"));
    }
    Ok(())
}

/// A point of S_R^d in standard hyperspherical coordinates.
///
/// `mids` holds theta_2, ..., theta_{d-1}; d = 2 + mids.len().
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpherePoint")]
pub struct SpherePoint {
    #[serde(rename = "R")]
    r: f64,
    theta: f64,
    mids: Vec<f64>,
    phi: f64,
}

#[derive(Deserialize)]
struct RawSpherePoint {
    #[serde(rename = "R")]
    r: f64,
    theta: f64,
    #[serde(default)]
    mids: Vec<f64>,
    phi: f64,
}

impl TryFrom<RawSpherePoint> for SpherePoint {
    type Error = Error;
    fn try_from(p: RawSpherePoint) -> Result<Self> {
        SpherePoint::new(p.r, p.theta, p.mids, p.phi)
    }
}

impl SpherePoint {
    /// Validates the coordinates; the azimuth is wrapped into [-pi, pi).
    pub fn new(r: f64, theta: f64, mids: Vec<f64>, phi: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain("R", r, "radius must be positive"));
        }
        check_angle("theta", theta, PI)?;
        for &m in &mids {
            check_angle("theta_i", m, PI)?;
        }
        if !phi.is_finite() {
            return Err(Error::domain("phi", phi, "azimuth must be finite"));
        }
        Ok(Self {
            r,
            theta,
            mids,
            phi: wrap_angle(phi),
        })
    }

    pub fn dim(&self) -> usize {
        2 + self.mids.len()
    }
    pub fn radius(&self) -> f64 {
        self.r
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn mids(&self) -> &[f64] {
        &self.mids
    }
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Cartesian embedding (x_0, ..., x_d) in R^{d+1}; x_0 = R cos(theta).
    pub fn embedding(&self) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dim() + 1);
        x.push(self.r * self.theta.cos());
        let mut s = self.r * self.theta.sin();
        for &t in self.mids.iter().rev() {
            x.push(s * t.cos());
            s *= t.sin();
        }
        x.push(s * self.phi.cos());
        x.push(s * self.phi.sin());
        x
    }
}

/// A point of S_R^3 in Hopf coordinates (vartheta, phi_1, phi_2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawHopfPoint")]
pub struct HopfPoint {
    #[serde(rename = "R")]
    r: f64,
    vartheta: f64,
    phi1: f64,
    phi2: f64,
}

#[derive(Deserialize)]
struct RawHopfPoint {
    #[serde(rename = "R")]
    r: f64,
    vartheta: f64,
    phi1: f64,
    phi2: f64,
}

impl TryFrom<RawHopfPoint> for HopfPoint {
    type Error = Error;
    fn try_from(p: RawHopfPoint) -> Result<Self> {
        HopfPoint::new(p.r, p.vartheta, p.phi1, p.phi2)
    }
}

impl HopfPoint {
    pub fn new(r: f64, vartheta: f64, phi1: f64, phi2: f64) -> Result<Self> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain("R", r, "radius must be positive"));
        }
        check_angle("vartheta", vartheta, PI / 2.0)?;
        if !phi1.is_finite() || !phi2.is_finite() {
            return Err(Error::domain("phi", f64::NAN, "Hopf azimuths must be finite"));
        }
        Ok(Self {
            r,
            vartheta,
            phi1: wrap_angle(phi1),
            phi2: wrap_angle(phi2),
        })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }
    pub fn vartheta(&self) -> f64 {
        self.vartheta
    }
    pub fn phi1(&self) -> f64 {
        self.phi1
    }
    pub fn phi2(&self) -> f64 {
        self.phi2
    }

    pub fn embedding(&self) -> [f64; 4] {
        let (c, s) = (self.vartheta.cos(), self.vartheta.sin());
        [
            self.r * c * self.phi1.cos(),
            self.r * c * self.phi1.sin(),
            self.r * s * self.phi2.cos(),
            self.r * s * self.phi2.sin(),
        ]
    }
}

/// Angular separation of two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodesicSeparation {
    /// Cosine of the angle between the S^{d-1} directions (theta_2, ..., phi).
    pub cos_gamma: f64,
    /// Geodesic angle in [0, pi].
    #[serde(rename = "Theta")]
    pub theta: f64,
    /// R * Theta.
    pub distance: f64,
}

fn same_shape(p: &SpherePoint, q: &SpherePoint) -> Result<()> {
    if p.dim() != q.dim() {
        return Err(Error::Argument(format!(
            "dimension mismatch: {} vs {}",
            p.dim(),
            q.dim()
        )));
    }
    if (p.r - q.r).abs() > 1e-12 * p.r.max(q.r) {
        return Err(Error::Argument(format!("radius mismatch: {} vs {}", p.r, q.r)));
    }
    Ok(())
}

// cos(gamma) as the affine function a + b cos(psi) of the azimuth difference.
fn nested_affine(p: &SpherePoint, q: &SpherePoint) -> (f64, f64) {
    let (mut a, mut b) = (0.0, 1.0);
    for (&t, &u) in p.mids.iter().zip(q.mids.iter()) {
        let (ct, st, cu, su) = (t.cos(), t.sin(), u.cos(), u.sin());
        a = ct * cu + st * su * a;
        b *= st * su;
    }
    (a, b)
}

/// cos(gamma): inner product of the unit S^{d-1} directions of the two points.
pub fn separation_cos_gamma(p: &SpherePoint, q: &SpherePoint) -> Result<f64> {
    same_shape(p, q)?;
    let (a, b) = nested_affine(p, q);
    Ok(a + b * (p.phi - q.phi).cos())
}

fn clamp_inner(c: f64) -> Result<f64> {
    if c.abs() > 1.0 + CLAMP_TOL || c.is_nan() {
        return Err(Error::domain("cos", c, "inner product outside [-1, 1] beyond rounding"));
    }
    Ok(c.clamp(-1.0, 1.0))
}

// Angle between two vectors of equal length via 2 atan2(|u - v|, |u + v|).
fn vector_angle(u: &[f64], v: &[f64]) -> f64 {
    let (mut d2, mut s2) = (0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        d2 += (a - b) * (a - b);
        s2 += (a + b) * (a + b);
    }
    2.0 * d2.sqrt().atan2(s2.sqrt())
}

/// Geodesic separation of two points of S_R^d.
pub fn geodesic_distance(p: &SpherePoint, q: &SpherePoint) -> Result<GeodesicSeparation> {
    let cos_gamma = separation_cos_gamma(p, q)?;
    let c = p.theta.cos() * q.theta.cos() + p.theta.sin() * q.theta.sin() * cos_gamma;
    clamp_inner(c)?;
    let theta = vector_angle(&p.embedding(), &q.embedding());
    Ok(GeodesicSeparation {
        cos_gamma: clamp_inner(cos_gamma)?,
        theta,
        distance: p.r * theta,
    })
}

/// Cosine of the geodesic angle between two points in Hopf coordinates.
pub fn hopf_cos_distance(p: &HopfPoint, q: &HopfPoint) -> Result<f64> {
    if (p.r - q.r).abs() > 1e-12 * p.r.max(q.r) {
        return Err(Error::Argument(format!("radius mismatch: {} vs {}", p.r, q.r)));
    }
    let c = p.vartheta.cos() * q.vartheta.cos() * (p.phi1 - q.phi1).cos()
        + p.vartheta.sin() * q.vartheta.sin() * (p.phi2 - q.phi2).cos();
    clamp_inner(c)
}

/// Geodesic angle between two Hopf points.
pub fn hopf_angle(p: &HopfPoint, q: &HopfPoint) -> Result<f64> {
    hopf_cos_distance(p, q)?;
    Ok(vector_angle(&p.embedding(), &q.embedding()))
}

/// (A_d, B_d) with cos(Theta) = A_d + B_d cos(phi - phi').
pub fn ab_general(p: &SpherePoint, q: &SpherePoint) -> Result<(f64, f64)> {
    same_shape(p, q)?;
    let (a, b) = nested_affine(p, q);
    let ss = p.theta.sin() * q.theta.sin();
    Ok((p.theta.cos() * q.theta.cos() + ss * a, ss * b))
}

/// (A, B) for S^3 from the four polar angles (theta, theta', theta_2, theta_2').
pub fn ab_s3(theta: f64, theta_p: f64, theta2: f64, theta2_p: f64) -> (f64, f64) {
    let ss = theta.sin() * theta_p.sin();
    (
        theta.cos() * theta_p.cos() + ss * theta2.cos() * theta2_p.cos(),
        ss * theta2.sin() * theta2_p.sin(),
    )
}

/// Density of the Riemannian volume with respect to d theta d theta_2 ... d phi.
pub fn volume_weight(p: &SpherePoint) -> f64 {
    let d = p.dim() as i32;
    let mut w = p.r.powi(d) * p.theta.sin().powi(d - 1);
    for (i, &t) in p.mids.iter().enumerate() {
        // mids[i] is theta_{i+2}, weighted by sin^{i+1}
        w *= t.sin().powi(i as i32 + 1);
    }
    w
}

/// Surface area of the unit S^{d-1}: 2 pi^{d/2} / Gamma(d/2).
pub fn unit_sphere_area(d: usize) -> f64 {
    let h = d as f64 / 2.0;
    2.0 * PI.powf(h) / crate::specfun::gamma(h)
}

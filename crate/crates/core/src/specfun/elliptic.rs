//! Legendre elliptic integrals through Carlson's symmetric forms (duplication theorem).

use std::f64::consts::FRAC_PI_2;

use crate::config::ELLIPTIC_GUARD;
use crate::error::{Error, Result};

// Relative truncation target of each Carlson reduction.
const R_TOL: f64 = 1e-16;

fn check_nonneg(name: &'static str, v: f64) -> Result<()> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(Error::domain(name, v, "must be finite and non-negative"));
    }
    Ok(())
}

/// Carlson's R_F(x, y, z). At most one argument may vanish.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> Result<f64> {
    check_nonneg("x", x)?;
    check_nonneg("y", y)?;
    check_nonneg("z", z)?;
    if x + y == 0.0 || y + z == 0.0 || x + z == 0.0 {
        return Err(Error::domain("x+y", x + y, "R_F needs at most one zero argument"));
    }
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let q = (3.0 * R_TOL).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut a = a0;
    let mut fac = 1.0;
    while q * fac >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        fac *= 0.25;
    }
    let xx = (a0 - x0) * fac / a;
    let yy = (a0 - y0) * fac / a;
    let zz = -xx - yy;
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    Ok((1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt())
}

/// Carlson's R_C(x, y) for y > 0, via its elementary closed forms.
pub fn carlson_rc(x: f64, y: f64) -> Result<f64> {
    check_nonneg("x", x)?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain("y", y, "R_C needs y > 0"));
    }
    if x == y {
        return Ok(1.0 / y.sqrt());
    }
    if x < y {
        if x == 0.0 {
            return Ok(FRAC_PI_2 / y.sqrt());
        }
        let d = y - x;
        Ok(((d / x).sqrt()).atan() / d.sqrt())
    } else {
        let d = x - y;
        Ok(((d / x).sqrt()).atanh() / d.sqrt())
    }
}

/// Carlson's R_D(x, y, z) = R_J(x, y, z, z).
pub fn carlson_rd(x: f64, y: f64, z: f64) -> Result<f64> {
    check_nonneg("x", x)?;
    check_nonneg("y", y)?;
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain("z", z, "R_D needs z > 0"));
    }
    if x + y == 0.0 {
        return Err(Error::domain("x+y", 0.0, "R_D needs x + y > 0"));
    }
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + 3.0 * z) / 5.0;
    let q = (0.25 * R_TOL).powf(-1.0 / 6.0)
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut a = a0;
    let mut fac = 1.0;
    let mut sum = 0.0;
    while q * fac >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        sum += fac / (sz * (z + lam));
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        fac *= 0.25;
    }
    let xx = (a0 - x0) * fac / a;
    let yy = (a0 - y0) * fac / a;
    let zz = -(xx + yy) / 3.0;
    let e2 = xx * yy - 6.0 * zz * zz;
    let e3 = (3.0 * xx * yy - 8.0 * zz * zz) * zz;
    let e4 = 3.0 * (xx * yy - zz * zz) * zz * zz;
    let e5 = xx * yy * zz * zz * zz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    Ok(fac * series / (a * a.sqrt()) + 3.0 * sum)
}

/// Carlson's R_J(x, y, z, p) for p > 0.
pub fn carlson_rj(x: f64, y: f64, z: f64, p: f64) -> Result<f64> {
    check_nonneg("x", x)?;
    check_nonneg("y", y)?;
    check_nonneg("z", z)?;
    if !(p > 0.0) || !p.is_finite() {
        return Err(Error::domain("p", p, "R_J needs p > 0 (use elliptic_pi for the principal value)"));
    }
    if x + y == 0.0 || y + z == 0.0 || x + z == 0.0 {
        return Err(Error::domain("x+y", x + y, "R_J needs at most one zero argument"));
    }
    let (x0, y0, z0) = (x, y, z);
    let (mut x, mut y, mut z, mut p) = (x, y, z, p);
    let a0 = (x + y + z + 2.0 * p) / 5.0;
    let delta = (p - x) * (p - y) * (p - z);
    let q = (0.25 * R_TOL).powf(-1.0 / 6.0)
        * (a0 - x)
            .abs()
            .max((a0 - y).abs())
            .max((a0 - z).abs())
            .max((a0 - p).abs());
    let mut a = a0;
    let mut fac = 1.0;
    let mut sum = 0.0;
    while q * fac >= a.abs() {
        let (sx, sy, sz, sp) = (x.sqrt(), y.sqrt(), z.sqrt(), p.sqrt());
        let lam = sx * sy + sx * sz + sy * sz;
        let d = (sp + sx) * (sp + sy) * (sp + sz);
        let e = delta * fac * fac * fac / (d * d);
        sum += fac * carlson_rc(1.0, 1.0 + e)? / d;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        p = 0.25 * (p + lam);
        a = 0.25 * (a + lam);
        fac *= 0.25;
    }
    let xx = (a0 - x0) * fac / a;
    let yy = (a0 - y0) * fac / a;
    let zz = (a0 - z0) * fac / a;
    let pp = -(xx + yy + zz) / 2.0;
    let e2 = xx * yy + xx * zz + yy * zz - 3.0 * pp * pp;
    let e3 = xx * yy * zz + 2.0 * e2 * pp + 4.0 * pp * pp * pp;
    let e4 = (2.0 * xx * yy * zz + e2 * pp + 3.0 * pp * pp * pp) * pp;
    let e5 = xx * yy * zz * pp * pp;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0
        - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    Ok(fac * series / (a * a.sqrt()) + 6.0 * sum)
}

/// 1 - k^2, rejecting moduli inside the coincidence guard band.
fn complementary(k: f64) -> Result<f64> {
    if !(k >= 0.0) || !k.is_finite() {
        return Err(Error::domain("k", k, "modulus must be non-negative"));
    }
    if k >= 1.0 {
        return Err(Error::domain("k", k, "modulus must be < 1 (coincidence singularity)"));
    }
    let kc2 = (1.0 - k) * (1.0 + k);
    if kc2 < ELLIPTIC_GUARD {
        return Err(Error::domain("k", k, "1 - k^2 inside the coincidence guard band"));
    }
    Ok(kc2)
}

// F(phi, k) from sin(phi) and cos(phi); K(k) is the (1, 0) case.
fn legendre_f(s: f64, c: f64, k: f64) -> Result<f64> {
    if s == 0.0 {
        return Ok(0.0);
    }
    if k == 0.0 {
        return Ok(s.atan2(c));
    }
    let ks = k * s;
    Ok(s * carlson_rf(c * c, (1.0 - ks) * (1.0 + ks), 1.0)?)
}

/// Complete elliptic integral of the first kind K(k), modulus convention.
pub fn elliptic_k(k: f64) -> Result<f64> {
    complementary(k)?;
    legendre_f(1.0, 0.0, k)
}

/// Incomplete elliptic integral of the first kind F(phi, k), 0 <= phi <= pi/2.
pub fn elliptic_f(phi: f64, k: f64) -> Result<f64> {
    if !(0.0..=FRAC_PI_2).contains(&phi) {
        return Err(Error::domain("phi", phi, "amplitude must lie in [0, pi/2]"));
    }
    complementary(k)?;
    if phi == FRAC_PI_2 {
        return legendre_f(1.0, 0.0, k);
    }
    legendre_f(phi.sin(), phi.cos(), k)
}

/// Complete elliptic integral of the second kind E(k), 0 <= k <= 1.
pub fn elliptic_e(k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&k) {
        return Err(Error::domain("k", k, "modulus must lie in [0, 1]"));
    }
    if k == 1.0 {
        return Ok(1.0);
    }
    if k == 0.0 {
        return Ok(FRAC_PI_2);
    }
    let kc2 = (1.0 - k) * (1.0 + k);
    if kc2 == 0.0 {
        return Ok(1.0);
    }
    Ok(carlson_rf(0.0, kc2, 1.0)? - k * k / 3.0 * carlson_rd(0.0, kc2, 1.0)?)
}

/// Complete elliptic integral of the third kind
/// Pi(alpha2, k) = int_0^{pi/2} dt / ((1 - alpha2 sin^2 t) sqrt(1 - k^2 sin^2 t)).
///
/// For alpha2 > 1 the Cauchy principal value is returned.
pub fn elliptic_pi(alpha2: f64, k: f64) -> Result<f64> {
    if !(alpha2 >= 0.0) || !alpha2.is_finite() {
        return Err(Error::domain("alpha2", alpha2, "characteristic must be >= 0"));
    }
    if alpha2 == 1.0 {
        return Err(Error::domain("alpha2", alpha2, "characteristic 1 is singular"));
    }
    let kc2 = complementary(k)?;
    let rf = legendre_f(1.0, 0.0, k)?;
    if alpha2 == 0.0 {
        return Ok(rf);
    }
    if alpha2 < 1.0 {
        return Ok(rf + alpha2 / 3.0 * carlson_rj(0.0, kc2, 1.0, 1.0 - alpha2)?);
    }
    // Principal value: with x = 0 the R_C term of the p < 0 transformation vanishes.
    let y = kc2;
    let p = 1.0 - alpha2;
    let q = y + (1.0 - y) * y / (y - p);
    let rj_pv = ((q - y) * carlson_rj(0.0, y, 1.0, q)? - 3.0 * rf) / (y - p);
    Ok(rf + alpha2 / 3.0 * rj_pv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate, QuadOptions};

    fn quad(f: impl Fn(f64) -> f64) -> f64 {
        integrate(f, 0.0, FRAC_PI_2, QuadOptions::tol(1e-15, 1e-15))
            .unwrap()
            .value
    }

    #[test]
    fn k_at_zero() {
        assert_eq!(elliptic_k(0.0).unwrap(), FRAC_PI_2);
        assert!((elliptic_e(0.0).unwrap() - FRAC_PI_2).abs() < 1e-16);
        assert_eq!(elliptic_pi(0.0, 0.0).unwrap(), FRAC_PI_2);
    }

    #[test]
    fn k_guard_band() {
        assert!(elliptic_k(1.0 - 1e-16).is_err());
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_k(-0.1).is_err());
    }

    #[test]
    fn k_e_against_quadrature() {
        let k: f64 = 0.6;
        let kq = quad(|t| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt());
        let eq = quad(|t| (1.0 - k * k * t.sin().powi(2)).sqrt());
        assert!((elliptic_k(k).unwrap() - kq).abs() < 1e-12 * kq);
        assert!((elliptic_e(k).unwrap() - eq).abs() < 1e-12 * eq);
        assert!((elliptic_e(1.0).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn pi_against_quadrature() {
        let (n, k): (f64, f64) = (0.3, 0.5);
        let pq = quad(|t| {
            let s2 = t.sin().powi(2);
            1.0 / ((1.0 - n * s2) * (1.0 - k * k * s2).sqrt())
        });
        assert!((elliptic_pi(n, k).unwrap() - pq).abs() < 1e-11 * pq);
        let a2: f64 = 0.7;
        let v = elliptic_pi(a2, 0.0).unwrap();
        assert!((v - FRAC_PI_2 / (1.0 - a2).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn pi_principal_value_matches_mpmath() {
        // mpmath.ellippi(n, m) with m = k^2, n > 1 (principal value)
        let v = elliptic_pi(2.5, 0.6).unwrap();
        assert!((v - (-0.149_746_409_287_741_91)).abs() < 1e-12, "{v}");
        assert!(elliptic_pi(1.7, 0.0).unwrap().abs() < 1e-14);
    }

    #[test]
    fn f_shares_k_path() {
        for i in 0..10 {
            let k = i as f64 / 10.0;
            assert_eq!(elliptic_f(FRAC_PI_2, k).unwrap(), elliptic_k(k).unwrap());
            assert!((elliptic_pi(0.0, k).unwrap() - elliptic_k(k).unwrap()).abs() < 1e-15);
        }
        assert_eq!(elliptic_f(0.0, 0.3).unwrap(), 0.0);
        let k: f64 = 0.7;
        let fq = integrate(
            |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(),
            0.0,
            std::f64::consts::FRAC_PI_4,
            QuadOptions::tol(1e-15, 1e-15),
        )
        .unwrap()
        .value;
        assert!((elliptic_f(std::f64::consts::FRAC_PI_4, k).unwrap() - fq).abs() < 1e-12);
    }

    #[test]
    fn carlson_reference_values() {
        // Carlson (1995) Table values
        assert!((carlson_rf(1.0, 2.0, 0.0).unwrap() - 1.311_028_777_146_059_9).abs() < 1e-14);
        assert!((carlson_rd(0.0, 2.0, 1.0).unwrap() - 1.797_210_352_103_388_3).abs() < 1e-14);
        assert!((carlson_rj(0.0, 1.0, 2.0, 3.0).unwrap() - 0.776_886_237_785_823_3).abs() < 1e-14);
        assert!((carlson_rc(0.0, 0.25).unwrap() - std::f64::consts::PI).abs() < 1e-14);
    }
}

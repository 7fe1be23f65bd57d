//! Gauss hypergeometric series 2F1(a, b; c; z) for real parameters.

use crate::config::ExpansionConfig;
use crate::error::{Error, Result};

use super::{gamma, is_nonpositive_integer};

/// 2F1(a, b; c; z) with default truncation settings.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    gauss_2f1_with(a, b, c, z, &ExpansionConfig::default())
}

// Number of terms of a terminating series (a or b a nonpositive integer).
fn termination(a: f64, b: f64) -> Option<u64> {
    let na = is_nonpositive_integer(a).then(|| (-a).round() as u64);
    let nb = is_nonpositive_integer(b).then(|| (-b).round() as u64);
    match (na, nb) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    }
}

fn finite_sum(a: f64, b: f64, c: f64, z: f64, n: u64) -> Result<f64> {
    if is_nonpositive_integer(c) && ((-c).round() as u64) < n {
        return Err(Error::Representation(format!(
            "2F1 denominator parameter c = {c} hits a pole before the series terminates"
        )));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..n {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
    }
    Ok(sum)
}

/// 2F1(a, b; c; z) with explicit truncation settings.
///
/// Terminating series are summed exactly for any z. Otherwise the Maclaurin series is used
/// for |z| < 1 (after an Euler transformation when it terminates and z > 1/2, and a Pfaff
/// transformation for z < -1/2), with Gauss's sum at z = 1.
pub fn gauss_2f1_with(a: f64, b: f64, c: f64, z: f64, cfg: &ExpansionConfig) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && c.is_finite() && z.is_finite()) {
        return Err(Error::Argument("2F1 parameters must be finite".into()));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    if let Some(n) = termination(a, b) {
        return finite_sum(a, b, c, z, n);
    }
    if is_nonpositive_integer(c) {
        return Err(Error::domain("c", c, "nonpositive integer c without termination"));
    }
    if z == 1.0 {
        let s = c - a - b;
        if s > 0.0 {
            return Ok(gamma(c) * gamma(s) / (gamma(c - a) * gamma(c - b)));
        }
        return Err(Error::Convergence(format!("2F1 diverges at z = 1 with c - a - b = {s}")));
    }
    if z > 1.0 {
        return Err(Error::Convergence(format!("2F1 series diverges for z = {z} > 1")));
    }
    if z < -0.5 {
        // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1))
        let w = z / (z - 1.0);
        return Ok((1.0 - z).powf(-a) * gauss_2f1_with(a, c - b, c, w, cfg)?);
    }
    if z > 0.5 {
        if let Some(n) = termination(c - a, c - b) {
            return Ok((1.0 - z).powf(c - a - b) * finite_sum(c - a, c - b, c, z, n)?);
        }
    }
    let hump = a.abs() + b.abs() + c.abs() + 2.0;
    let tail = 1.0 / (1.0 - z.abs());
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..cfg.max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        sum += term;
        if kf > hump && term.abs() * tail <= cfg.term_tol.max(f64::EPSILON * 0.5) * sum.abs() {
            return Ok(sum);
        }
        if term == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::Convergence(format!(
        "2F1({a}, {b}; {c}; {z}) not converged after {} terms",
        cfg.max_terms
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::chebyshev_t;

    #[test]
    fn chebyshev_representation() {
        for m in 0..8u32 {
            for &x in &[-0.9, -0.3, 0.1, 0.77] {
                let v = gauss_2f1(-(m as f64), m as f64, 0.5, (1.0 - x) / 2.0).unwrap();
                let err = (v - chebyshev_t(m, x)).abs();
                assert!(err < 1e-11, "m={m} x={x} err={err}");
            }
        }
    }

    #[test]
    fn zero_argument() {
        assert_eq!(gauss_2f1(1.3, -2.7, 0.4, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn long_truncation_reference() {
        let (a, b, c, z) = (0.5f64, 2.0f64, 1.5f64, 0.25f64);
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 0..200 {
            sum += term;
            let kf = k as f64;
            term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        }
        let v = gauss_2f1(a, b, c, z).unwrap();
        assert!((v - sum).abs() < 1e-15 * sum.abs());
    }

    #[test]
    fn elementary_identities() {
        // 2F1(1,1;2;z) = -log(1-z)/z
        for &z in &[-0.9, -0.4, 0.3, 0.8] {
            let v = gauss_2f1(1.0, 1.0, 2.0, z).unwrap();
            let e = -(1.0 - z).ln() / z;
            assert!((v - e).abs() < 1e-13 * e.abs(), "z={z} v={v} e={e}");
        }
        // Gauss sum: 2F1(1/2, 1/2; 2; 1) = Gamma(2) Gamma(1) / Gamma(3/2)^2 = 4/pi
        let v = gauss_2f1(0.5, 0.5, 2.0, 1.0).unwrap();
        assert!((v - 4.0 / std::f64::consts::PI).abs() < 1e-14);
    }

    #[test]
    fn divergent_inputs() {
        assert!(matches!(gauss_2f1(0.5, 0.5, 1.0, 1.2), Err(Error::Convergence(_))));
        assert!(gauss_2f1(0.5, 0.5, -2.0, 0.3).is_err());
        assert!(matches!(gauss_2f1(-3.0, 1.0, -1.0, 0.3), Err(Error::Representation(_))));
    }
}

//! Chebyshev, Gegenbauer and Legendre polynomials, Pochhammer symbols.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Degree and order of a polynomial family member.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyDegree {
    pub l: u32,
    /// Integer order (associated Legendre) or real parameter (Gegenbauer).
    pub m_or_mu: f64,
}

/// Rising factorial (a)_n as a direct product; (a)_0 = 1.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// n! in floating point (exact up to 22!).
pub fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Chebyshev polynomial of the first kind T_m(x).
pub fn chebyshev_t(m: u32, x: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let (mut t0, mut t1) = (1.0, x);
    for _ in 1..m {
        let t2 = 2.0 * x * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    t1
}

/// Gegenbauer polynomial C_l^mu(x) for mu > -1/2, mu != 0.
pub fn gegenbauer_c(l: u32, mu: f64, x: f64) -> Result<f64> {
    if !(mu > -0.5) || mu == 0.0 || !mu.is_finite() {
        return Err(Error::domain("mu", mu, "Gegenbauer parameter must be > -1/2 and nonzero"));
    }
    if l == 0 {
        return Ok(1.0);
    }
    let (mut c0, mut c1) = (1.0, 2.0 * mu * x);
    for n in 2..=l {
        let n = n as f64;
        let c2 = (2.0 * x * (n + mu - 1.0) * c1 - (n + 2.0 * mu - 2.0) * c0) / n;
        c0 = c1;
        c1 = c2;
    }
    Ok(c1)
}

/// Legendre polynomial P_l(x).
pub fn legendre_p(l: u32, x: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    let (mut p0, mut p1) = (1.0, x);
    for n in 2..=l {
        let n = n as f64;
        let p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Ferrers function of integer degree and order, P_l^m(x) on [-1, 1].
///
/// Uses the DLMF sign convention P_1^1(x) = -(1 - x^2)^{1/2}. Negative orders follow
/// P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
pub fn assoc_legendre_p(l: u32, m: i32, x: f64) -> Result<f64> {
    if m.unsigned_abs() > l {
        return Err(Error::Argument(format!("order |m| = {} exceeds degree l = {l}", m.abs())));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain("x", x, "argument must lie in [-1, 1]"));
    }
    let am = m.unsigned_abs();
    let s = ((1.0 - x) * (1.0 + x)).sqrt();
    // P_m^m = (-1)^m (2m-1)!! s^m
    let mut pmm = 1.0;
    for i in 1..=am {
        pmm *= -((2 * i - 1) as f64) * s;
    }
    let val = if l == am {
        pmm
    } else {
        let mut p0 = pmm;
        let mut p1 = x * (2 * am + 1) as f64 * pmm;
        for n in (am + 2)..=l {
            let p2 = ((2 * n - 1) as f64 * x * p1 - (n + am - 1) as f64 * p0) / (n - am) as f64;
            p0 = p1;
            p1 = p2;
        }
        p1
    };
    if m >= 0 {
        Ok(val)
    } else {
        let ratio = factorial(l - am) / factorial(l + am);
        let sign = if am.is_multiple_of(2) { 1.0 } else { -1.0 };
        Ok(sign * ratio * val)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_t(0, 0.3), 1.0);
        assert!((chebyshev_t(3, 0.5) + 1.0).abs() < 1e-15);
        assert!((chebyshev_t(7, 0.3) - (7.0 * 0.3f64.acos()).cos()).abs() < 1e-14);
    }

    #[test]
    fn chebyshev_cosine_grid() {
        for m in 0..=20 {
            for i in 0..100 {
                let psi = std::f64::consts::PI * i as f64 / 99.0;
                let err = (chebyshev_t(m, psi.cos()) - (m as f64 * psi).cos()).abs();
                assert!(err < 1e-12, "m={m} psi={psi} err={err}");
            }
        }
    }

    #[test]
    fn gegenbauer_basics() {
        assert_eq!(gegenbauer_c(0, 1.3, 0.2).unwrap(), 1.0);
        assert!((gegenbauer_c(2, 0.5, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(gegenbauer_c(2, 0.0, 0.3).is_err());
        assert!(gegenbauer_c(2, -0.5, 0.3).is_err());
        // C_4^{3/2}(x) from the terminating hypergeometric sum
        // C_l^mu(x) = (2mu)_l / l! 2F1(-l, l+2mu; mu+1/2; (1-x)/2)
        let (mu, x) = (1.5f64, 0.2f64);
        let z = (1.0 - x) / 2.0;
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 0..=4u32 {
            sum += term;
            let kf = k as f64;
            term *= (-4.0 + kf) * (4.0 + 2.0 * mu + kf) / ((mu + 0.5 + kf) * (kf + 1.0)) * z;
        }
        let oracle = pochhammer(2.0 * mu, 4) / factorial(4) * sum;
        assert!((gegenbauer_c(4, mu, x).unwrap() - oracle).abs() < 1e-13);
    }

    #[test]
    fn legendre_equals_gegenbauer_half() {
        for l in 0..=12 {
            for i in 0..=40 {
                let x = -1.0 + i as f64 / 20.0;
                let a = gegenbauer_c(l, 0.5, x).unwrap();
                let b = assoc_legendre_p(l, 0, x).unwrap();
                assert!((a - b).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn assoc_legendre_convention() {
        assert!((assoc_legendre_p(1, 1, 0.0).unwrap() + 1.0).abs() < 1e-15);
        // P_2^1(x) = -3 x sqrt(1 - x^2)
        let x: f64 = 0.5;
        let expect = -3.0 * x * (1.0 - x * x).sqrt();
        assert!((assoc_legendre_p(2, 1, x).unwrap() - expect).abs() < 1e-14);
        assert!(assoc_legendre_p(1, 2, 0.1).is_err());
        // P_2^{-1} = -(1/6) P_2^1
        assert!((assoc_legendre_p(2, -1, x).unwrap() + expect / 6.0).abs() < 1e-14);
        assert_eq!(assoc_legendre_p(3, 2, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn pochhammer_empty_product() {
        assert_eq!(pochhammer(0.0, 0), 1.0);
        assert_eq!(pochhammer(3.0, 3), 60.0);
        assert_eq!(binomial(5, 2), 10.0);
    }
}

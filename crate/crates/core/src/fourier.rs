//! Azimuthal Fourier coefficients of g^d = J_d(Theta): the closed form on S^2, the
//! elliptic-integral form on S^3, and a quadrature oracle for any d.
//!
//! Coefficients are normalised so that g^d = sum_m G_m cos(m psi), psi = phi - phi';
//! the Neumann factor eps_m sits inside G_m.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::config::ELLIPTIC_GUARD;
use crate::error::{Error, Result};
use crate::fundsol::j_d_from_cos;
use crate::geometry::{ab_general, ab_s3, SpherePoint};
use crate::quadrature::{integrate, QuadOptions};
use crate::specfun::{binomial, elliptic_e, elliptic_k, elliptic_pi};

/// B below this routes elliptic-route evaluations to the axisymmetric limit.
pub const B_DEGENERATE: f64 = 1e-12;

/// How a coefficient was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Elliptic,
    Quadrature,
    AdditionTheorem,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Elliptic => "elliptic",
            Method::Quadrature => "quadrature",
            Method::AdditionTheorem => "addition_theorem",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One azimuthal Fourier coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourierCoefficient {
    pub m: u32,
    pub value: f64,
    pub method: Method,
    pub est_error: f64,
}

/// Neumann factor 2 - delta_{m,0}.
pub fn neumann(m: u32) -> f64 {
    if m == 0 {
        1.0
    } else {
        2.0
    }
}

fn check_polar(name: &'static str, t: f64) -> Result<()> {
    if !(0.0..=PI).contains(&t) {
        return Err(Error::domain(name, t, "polar angle must lie in [0, pi]"));
    }
    Ok(())
}

// ---------------------------------------------------------------- S^2

/// The quantities z_+- and lambda_+- = z / (1 + sqrt(1 - z^2)) of the S^2 log split
/// g^2 = (1/2) log((1 + cc)/(1 - cc)) + (1/2) log(1 + z_+ cos psi) - (1/2) log(1 - z_- cos psi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct S2LogTerms {
    pub z_plus: f64,
    pub z_minus: f64,
    pub lambda_plus: f64,
    pub lambda_minus: f64,
}

pub fn s2_log_terms(theta: f64, theta_p: f64) -> Result<S2LogTerms> {
    check_polar("theta", theta)?;
    check_polar("theta'", theta_p)?;
    let cc = theta.cos() * theta_p.cos();
    let ss = theta.sin() * theta_p.sin();
    let z_plus = ss / (1.0 + cc);
    let z_minus = ss / (1.0 - cc);
    if !(z_plus.abs() < 1.0 && z_minus.abs() < 1.0) {
        return Err(Error::singular("theta", theta, "points coincide or are antipodal for some psi"));
    }
    let lam = |z: f64| z / (1.0 + ((1.0 - z) * (1.0 + z)).sqrt());
    Ok(S2LogTerms {
        z_plus,
        z_minus,
        lambda_plus: lam(z_plus),
        lambda_minus: lam(z_minus),
    })
}

/// G_n on S^2 through the lambda_+- expansion of the two logarithms.
pub fn fourier_coeff_s2_log(n: u32, theta: f64, theta_p: f64) -> Result<f64> {
    let t = s2_log_terms(theta, theta_p)?;
    if n == 0 {
        let cc = theta.cos() * theta_p.cos();
        let root = |z: f64| 1.0 + ((1.0 - z) * (1.0 + z)).sqrt();
        return Ok(0.5 * ((1.0 + cc) / (1.0 - cc)).ln() + 0.5 * (root(t.z_plus) / root(t.z_minus)).ln());
    }
    let nf = n as f64;
    let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
    Ok((sign * t.lambda_plus.powi(n as i32) + t.lambda_minus.powi(n as i32)) / nf)
}

/// Closed-form Fourier coefficient of g^2 = log cot(Theta/2) on S^2.
///
/// With t = tan(theta/2): for n >= 1,
/// G_n = (1/n) [(t_< / t_>)^n - (-1)^n min(t t', 1/(t t'))^n],
/// and G_0 = log cot(theta_> / 2), or -log cot(max(theta_<, pi - theta_>)/2) when
/// theta + theta' > pi (the antipode of the source then lies inside the orbit).
pub fn fourier_coeff_s2(n: u32, theta: f64, theta_p: f64) -> Result<FourierCoefficient> {
    check_polar("theta", theta)?;
    check_polar("theta'", theta_p)?;
    let (lo, hi) = if theta <= theta_p { (theta, theta_p) } else { (theta_p, theta) };
    let value = if n == 0 {
        if hi == PI && lo == 0.0 {
            return Err(Error::singular("theta_>", hi, "log divergence at the antipode of the axis"));
        }
        if lo + hi <= PI {
            (1.0 / (0.5 * hi).tan()).ln()
        } else {
            -(1.0 / (0.5 * lo.max(PI - hi)).tan()).ln()
        }
    } else {
        let (tl, th) = ((0.5 * lo).tan(), (0.5 * hi).tan());
        if lo == 0.0 {
            0.0
        } else {
            let nf = n as f64;
            let ratio = if hi == PI { 0.0 } else { (tl / th).powi(n as i32) };
            let prod = tl * th;
            let near = if hi == PI { 0.0 } else { prod.min(1.0 / prod).powi(n as i32) };
            let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            (ratio - sign * near) / nf
        }
    };
    Ok(FourierCoefficient {
        m: n,
        value,
        method: Method::ClosedForm,
        est_error: 4.0 * f64::EPSILON * value.abs().max(f64::MIN_POSITIVE),
    })
}

/// sum_{n=0}^{N} G_n cos(n psi) on S^2.
pub fn fourier_sum_s2(theta: f64, theta_p: f64, psi: f64, n_max: u32) -> Result<f64> {
    let mut sum = 0.0;
    for n in 0..=n_max {
        sum += fourier_coeff_s2(n, theta, theta_p)?.value * (n as f64 * psi).cos();
    }
    Ok(sum)
}

/// g^2 evaluated directly from the angles.
pub fn g2_direct(theta: f64, theta_p: f64, psi: f64) -> Result<f64> {
    let c = theta.cos() * theta_p.cos() + theta.sin() * theta_p.sin() * psi.cos();
    j_d_from_cos(2, c)
}

// ---------------------------------------------------------------- S^3, elliptic route

/// Parameters of the elliptic reduction of the S^3 Fourier integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EllipticData {
    pub alpha2: f64,
    pub alpha1_2: f64,
    pub k2: f64,
    pub g: f64,
    pub phi: f64,
    pub u1: f64,
}

/// Elliptic parameters for cos Theta = A + B cos psi.
pub fn elliptic_data(a: f64, b: f64) -> Result<EllipticData> {
    if !(a.abs() < 1.0) || !a.is_finite() {
        return Err(Error::domain("A", a, "need |A| < 1"));
    }
    if !(b >= 0.0) || !b.is_finite() {
        return Err(Error::domain("B", b, "need B >= 0"));
    }
    let p = 1.0 + a + b;
    let q = 1.0 - a + b;
    let k2 = 4.0 * b / (p * q);
    if !(1.0 - k2 >= ELLIPTIC_GUARD) {
        return Err(Error::singular("k^2", k2, "coincident or antipodal points on the psi orbit"));
    }
    Ok(EllipticData {
        alpha2: 2.0 * b / q,
        alpha1_2: 2.0 * (1.0 - a) / q,
        k2,
        g: 2.0 * b / (p * q).sqrt(),
        phi: PI / 2.0,
        u1: elliptic_k(k2.sqrt())?,
    })
}

/// Which form of the three-term recurrence for V_j to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VRecurrence {
    /// Third term advances to V_{j+2}; right side negated.
    Corrected,
    /// V_{j+1} in both of the last two terms, no overall sign. Wrong; kept for comparison.
    Unsigned,
}

/// Below this |k^2 - alpha^2| the V_j for j >= 2 come from quadrature.
pub const V_NEAR_DEGENERATE: f64 = 0.1;

fn v_direct(j: usize, a2: f64, k2: f64) -> Result<f64> {
    let f = |t: f64| {
        let s2 = t.sin().powi(2);
        1.0 / ((1.0 - a2 * s2).powi(j as i32) * (1.0 - k2 * s2).sqrt())
    };
    Ok(integrate(f, 0.0, PI / 2.0, QuadOptions::tol(0.0, 1e-14))?.value)
}

/// V_j = int_0^{pi/2} dphi / ((1 - alpha^2 sin^2 phi)^j sqrt(1 - k^2 sin^2 phi)), j = 0..=j_max.
pub fn v_sequence(j_max: usize, ed: &EllipticData) -> Result<Vec<f64>> {
    v_sequence_with(j_max, ed, VRecurrence::Corrected)
}

pub fn v_sequence_with(j_max: usize, ed: &EllipticData, rec: VRecurrence) -> Result<Vec<f64>> {
    let (a2, k2) = (ed.alpha2, ed.k2);
    let k = k2.sqrt();
    let mut v = Vec::with_capacity(j_max + 1);
    v.push(ed.u1);
    if j_max == 0 {
        return Ok(v);
    }
    if a2 == 0.0 {
        // all V_j collapse to K
        v.resize(j_max + 1, ed.u1);
        return Ok(v);
    }
    if (a2 - 1.0).abs() < 1e-14 || (k2 - a2).abs() < 1e-14 * k2.max(1e-300) {
        return Err(Error::domain("alpha^2", a2, "degenerate parameters: alpha^2 in {1, k^2}"));
    }
    v.push(elliptic_pi(a2, k)?);
    if j_max == 1 {
        return Ok(v);
    }
    if rec == VRecurrence::Corrected && (k2 - a2).abs() < V_NEAR_DEGENERATE {
        // both the V_2 formula and the recurrence divide by k^2 - alpha^2
        for j in 2..=j_max {
            v.push(v_direct(j, a2, k2)?);
        }
        return Ok(v);
    }
    let e = elliptic_e(k)?;
    v.push(
        ((k2 - a2) * v[0] + a2 * e + (2.0 * a2 * k2 + 2.0 * a2 - a2 * a2 - 3.0 * k2) * v[1])
            / (2.0 * (a2 - 1.0) * (k2 - a2)),
    );
    for j in 0..j_max.saturating_sub(2) {
        let jf = j as f64;
        let den = 2.0 * (jf + 2.0) * (a2 - 1.0) * (k2 - a2);
        let t0 = (2.0 * jf + 1.0) * k2 * v[j];
        let t1 = 2.0 * (jf + 1.0) * (a2 * k2 + a2 - 3.0 * k2) * v[j + 1];
        let c2 = (2.0 * jf + 3.0) * (a2 * a2 - 2.0 * a2 * k2 - 2.0 * a2 + 3.0 * k2);
        let next = match rec {
            VRecurrence::Corrected => -(t0 + t1 + c2 * v[j + 2]) / den,
            VRecurrence::Unsigned => (t0 + t1 + c2 * v[j + 1]) / den,
        };
        v.push(next);
    }
    Ok(v)
}

/// Coefficients of x^k in T_m(x), k = 0..=m.
fn chebyshev_coeffs(m: u32) -> Vec<f64> {
    let mut c = vec![0.0; m as usize + 1];
    if m == 0 {
        c[0] = 1.0;
        return c;
    }
    for k in 0..=m / 2 {
        // (-1)^k m (m-k-1)! / (k! (m-2k)!) 2^{m-2k-1}
        let mag = m as f64 / (m - k) as f64 * binomial(m - k, k) * 2f64.powi(m as i32 - 2 * k as i32 - 1);
        c[(m - 2 * k) as usize] = if k % 2 == 0 { mag } else { -mag };
    }
    c
}

/// a_0..a_{m+1} with (x + A/B) T_m(x) = sum_p a_p x^p.
pub fn a_coeffs(m: u32, a: f64, b: f64) -> Result<Vec<f64>> {
    if !(b > 0.0) {
        return Err(Error::domain("B", b, "need B > 0"));
    }
    let t = chebyshev_coeffs(m);
    let r = a / b;
    let mut out = vec![0.0; m as usize + 2];
    for (p, &c) in t.iter().enumerate() {
        out[p + 1] += c;
        out[p] += r * c;
    }
    Ok(out)
}

/// Which radical to use in the elliptic-route prefactor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum S3Prefactor {
    /// 2B / sqrt((1 + A + B)(1 - A + B)), matching g of the elliptic reduction.
    Derived,
    /// 2B / sqrt((1 - A + B)(1 + A - B)). Fails the quadrature check; kept for comparison.
    Swapped,
}

/// Relative error estimate above which [`fourier_coeff_s3`] abandons the elliptic sum.
pub const S3_FALLBACK_TOL: f64 = 1e-9;

/// Fourier coefficient of g^3 = cot Theta on S^3 from the four polar angles.
///
/// The elliptic double sum cancels badly for large m when (1 - A)/B is large; if its own
/// error estimate exceeds [`S3_FALLBACK_TOL`] the coefficient comes from quadrature and
/// is tagged accordingly.
pub fn fourier_coeff_s3(m: u32, theta: f64, theta_p: f64, theta2: f64, theta2_p: f64) -> Result<FourierCoefficient> {
    for (n, t) in [("theta", theta), ("theta'", theta_p), ("theta_2", theta2), ("theta_2'", theta2_p)] {
        check_polar(n, t)?;
    }
    let (a, b) = ab_s3(theta, theta_p, theta2, theta2_p);
    let c = fourier_coeff_s3_ab(m, a, b, S3Prefactor::Derived)?;
    if c.est_error <= S3_FALLBACK_TOL * (1.0 + c.value.abs()) {
        return Ok(c);
    }
    fourier_coeff_quadrature_ab(3, m, a, b, 1e-12)
}

/// Elliptic-route evaluation from (A, B) directly.
pub fn fourier_coeff_s3_ab(m: u32, a: f64, b: f64, pre: S3Prefactor) -> Result<FourierCoefficient> {
    if !(a.abs() < 1.0) {
        return Err(Error::singular("A", a, "points coincide or are antipodal for every psi"));
    }
    if b < B_DEGENERATE {
        if m == 0 {
            let v = a / ((1.0 - a) * (1.0 + a)).sqrt();
            return Ok(FourierCoefficient {
                m,
                value: v,
                method: Method::ClosedForm,
                est_error: 4.0 * f64::EPSILON * v.abs() + b,
            });
        }
        return fourier_coeff_quadrature_ab(3, m, a, b, 1e-12);
    }
    let ed = elliptic_data(a, b)?;
    let v = v_sequence(m as usize + 1, &ed)?;
    let ap = a_coeffs(m, a, b)?;
    let x0 = (1.0 - a) / b;
    let r = (a + b - 1.0) / (1.0 - a);
    let mut sum = 0.0;
    let mut biggest: f64 = 0.0;
    let mut xp = 1.0;
    for (p, &apv) in ap.iter().enumerate() {
        let mut rj = 1.0;
        for (j, vj) in v.iter().enumerate().take(p + 1) {
            let term = apv * xp * binomial(p as u32, j as u32) * rj * vj;
            sum += term;
            biggest = biggest.max(term.abs());
            rj *= r;
        }
        xp *= x0;
    }
    let radical = match pre {
        S3Prefactor::Derived => (1.0 + a + b) * (1.0 - a + b),
        S3Prefactor::Swapped => (1.0 - a + b) * (1.0 + a - b),
    };
    let f = 2.0 * b * neumann(m) / (PI * radical.sqrt());
    Ok(FourierCoefficient {
        m,
        value: f * sum,
        method: Method::Elliptic,
        est_error: 16.0 * f64::EPSILON * f.abs() * biggest * (m as f64 + 2.0),
    })
}

/// The m = 0 coefficient on S^3 in terms of K and Pi:
/// G_0 = (2/pi) [K(k) + (A + B - 1) Pi(alpha^2, k)] / sqrt((1 + A + B)(1 - A + B)).
pub fn fourier_coeff_s3_m0(theta: f64, theta_p: f64, theta2: f64, theta2_p: f64) -> Result<f64> {
    let (a, b) = ab_s3(theta, theta_p, theta2, theta2_p);
    s3_m0_ab(a, b)
}

fn s3_m0_ab(a: f64, b: f64) -> Result<f64> {
    if b < B_DEGENERATE {
        if !(a.abs() < 1.0) {
            return Err(Error::singular("A", a, "points coincide or are antipodal"));
        }
        return Ok(a / ((1.0 - a) * (1.0 + a)).sqrt());
    }
    let ed = elliptic_data(a, b)?;
    let k = ed.k2.sqrt();
    let kk = ed.u1;
    let pi3 = elliptic_pi(ed.alpha2, k)?;
    Ok(2.0 / PI * (kk + (a + b - 1.0) * pi3) / ((1.0 + a + b) * (1.0 - a + b)).sqrt())
}

/// m = 0 coefficient in Hopf coordinates, expanding in phi_2 - phi_2':
/// A = cos vartheta cos vartheta' cos(phi_1 - phi_1'), B = sin vartheta sin vartheta'.
pub fn fourier_coeff_hopf_m0(vartheta: f64, vartheta_p: f64, dphi1: f64) -> Result<f64> {
    let a = vartheta.cos() * vartheta_p.cos() * dphi1.cos();
    let b = vartheta.sin() * vartheta_p.sin();
    if b < B_DEGENERATE {
        return s3_m0_ab(a, b);
    }
    let ed = elliptic_data(a, b)?;
    let k = ed.k2.sqrt();
    let pi3 = elliptic_pi(ed.alpha2, k)?;
    let r1 = ((1.0 - a + b) * (1.0 + a + b)).sqrt();
    let r2 = ((a + b + 1.0) * (1.0 - a + b)).sqrt();
    Ok(2.0 / PI * (ed.u1 / r1 + (a + b - 1.0) * pi3 / r2))
}

/// Flat-space counterpart of the S^3 m = 0 coefficient: (1/pi) int_0^pi dpsi / |x - x'|
/// for points at cylindrical (rho, z) and (rho', z').
pub fn euclidean_m0_3d(rho: f64, z: f64, rho_p: f64, z_p: f64) -> Result<f64> {
    let s2 = (rho + rho_p).powi(2) + (z - z_p).powi(2);
    let k2 = 4.0 * rho * rho_p / s2;
    if !(1.0 - k2 >= ELLIPTIC_GUARD) {
        return Err(Error::singular("k^2", k2, "coincident circles"));
    }
    Ok(2.0 / PI * elliptic_k(k2.sqrt())? / s2.sqrt())
}

// ---------------------------------------------------------------- quadrature oracle

/// G_m = (eps_m / pi) int_0^pi J_d(Theta(psi)) cos(m psi) dpsi with cos Theta = A + B cos psi.
pub fn fourier_coeff_quadrature_ab(d: usize, m: u32, a: f64, b: f64, tol: f64) -> Result<FourierCoefficient> {
    if !(tol > 0.0) {
        return Err(Error::domain("tol", tol, "tolerance must be positive"));
    }
    if !(a + b < 1.0 && a - b > -1.0) {
        return Err(Error::singular("A +- B", a, "kernel singular on the psi orbit"));
    }
    let mf = m as f64;
    let mut fail = None;
    let f = |psi: f64| match j_d_from_cos(d, a + b * psi.cos()) {
        Ok(v) => v * (mf * psi).cos(),
        Err(e) => {
            fail = Some(e);
            0.0
        }
    };
    let opts = QuadOptions {
        abs_tol: tol * 1e-3,
        rel_tol: tol,
        max_intervals: 20_000,
    };
    let r = integrate(f, 0.0, PI, opts)?;
    if let Some(e) = fail {
        return Err(e);
    }
    let s = neumann(m) / PI;
    Ok(FourierCoefficient {
        m,
        value: s * r.value,
        method: Method::Quadrature,
        est_error: s * r.abs_error,
    })
}

/// Quadrature oracle for two points of S^d (their azimuths are ignored).
pub fn fourier_coeff_quadrature(d: usize, m: u32, p: &SpherePoint, q: &SpherePoint, tol: f64) -> Result<FourierCoefficient> {
    if p.dim() != d {
        return Err(Error::Argument(format!("points live on S^{}, expected S^{d}", p.dim())));
    }
    let (a, b) = ab_general(p, q)?;
    fourier_coeff_quadrature_ab(d, m, a, b, tol)
}

/// Coefficients m = 0..=m_max from the elliptic route.
pub fn fourier_table_s3(m_max: u32, theta: f64, theta_p: f64, theta2: f64, theta2_p: f64) -> Result<Vec<FourierCoefficient>> {
    (0..=m_max).map(|m| fourier_coeff_s3(m, theta, theta_p, theta2, theta2_p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::chebyshev_t;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn s2_special_values() {
        for n in 1..5 {
            assert_eq!(fourier_coeff_s2(n, 0.0, 1.3).unwrap().value, 0.0);
        }
        assert!(fourier_coeff_s2(0, 0.4, PI / 2.0).unwrap().value.abs() < 1e-15);
        assert!(fourier_coeff_s2(0, 0.0, PI).is_err());
        let t = 0.9;
        let v = fourier_sum_s2(t, 0.0, 1.7, 0).unwrap();
        assert!((v - (1.0 / (t / 2.0).tan()).ln()).abs() < 1e-15);
    }

    #[test]
    fn s2_against_quadrature_and_log_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let t = rng.gen_range(0.1..3.0);
            let tp = rng.gen_range(0.1..3.0);
            let p = SpherePoint::new(1.0, t, vec![], 0.0).unwrap();
            let q = SpherePoint::new(1.0, tp, vec![], 0.0).unwrap();
            for n in 0..=10 {
                let c = fourier_coeff_s2(n, t, tp).unwrap().value;
                let o = fourier_coeff_quadrature(2, n, &p, &q, 1e-12).unwrap().value;
                let l = fourier_coeff_s2_log(n, t, tp).unwrap();
                assert!((c - o).abs() < 1e-9 * (1.0 + c.abs()), "{n} {t} {tp}: {c} {o}");
                assert!((c - l).abs() < 1e-12 * (1.0 + c.abs()), "{n} {t} {tp}: {c} {l}");
            }
        }
        let c = fourier_coeff_s2(3, 0.9, 1.7).unwrap().value;
        let o = fourier_coeff_quadrature_ab(2, 3, 0.9f64.cos() * 1.7f64.cos(), 0.9f64.sin() * 1.7f64.sin(), 1e-12)
            .unwrap()
            .value;
        assert!((c - o).abs() < 1e-9);
    }

    #[test]
    fn s2_partial_sum() {
        let v = fourier_sum_s2(1.0, 0.6, 2.0, 40).unwrap();
        assert!((v - g2_direct(1.0, 0.6, 2.0).unwrap()).abs() < 1e-10);
        let v = fourier_sum_s2(2.2, 2.5, 0.5, 80).unwrap();
        assert!((v - g2_direct(2.2, 2.5, 0.5).unwrap()).abs() < 1e-10);
    }

    #[test]
    fn elliptic_parameters() {
        let ed = elliptic_data(0.0, 0.5).unwrap();
        assert!((ed.k2 - 8.0 / 9.0).abs() < 1e-15);
        assert!((ed.alpha2 - 2.0 / 3.0).abs() < 1e-15);
        assert!((ed.alpha1_2 - 4.0 / 3.0).abs() < 1e-15);
        let z = elliptic_data(0.3, 0.0).unwrap();
        assert_eq!((z.k2, z.alpha2, z.g), (0.0, 0.0, 0.0));
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let (a, b) = ab_s3(
                rng.gen_range(0.05..3.1),
                rng.gen_range(0.05..3.1),
                rng.gen_range(0.05..3.1),
                rng.gen_range(0.05..3.1),
            );
            if let Ok(ed) = elliptic_data(a, b) {
                assert!(0.0 < ed.alpha2 && ed.alpha2 < ed.k2 && ed.k2 < 1.0);
            }
        }
        assert!(matches!(elliptic_data(0.5, 0.5), Err(Error::Singularity { .. })));
    }

    fn v_quad(j: usize, a2: f64, k2: f64) -> f64 {
        integrate(
            |t: f64| {
                let s2 = t.sin().powi(2);
                1.0 / ((1.0 - a2 * s2).powi(j as i32) * (1.0 - k2 * s2).sqrt())
            },
            0.0,
            PI / 2.0,
            QuadOptions::tol(0.0, 1e-14),
        )
        .unwrap()
        .value
    }

    #[test]
    fn v_values() {
        let mut ed = elliptic_data(0.1, 0.3).unwrap();
        ed.alpha2 = 0.3;
        ed.k2 = 0.5;
        ed.u1 = elliptic_k(0.5f64.sqrt()).unwrap();
        let v = v_sequence(6, &ed).unwrap();
        let lit = v_sequence_with(6, &ed, VRecurrence::Unsigned).unwrap();
        for j in 0..=6 {
            let q = v_quad(j, 0.3, 0.5);
            assert!((v[j] - q).abs() < 1e-10 * q, "{j}");
            if j >= 3 {
                assert!((lit[j] - q).abs() > 1e-3 * q);
            }
        }
        let z = elliptic_data(0.2, 0.0).unwrap();
        let v = v_sequence(3, &z).unwrap();
        assert!((v[0] - PI / 2.0).abs() < 1e-15 && (v[1] - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn a_coefficients() {
        assert_eq!(a_coeffs(0, 0.2, 0.4).unwrap(), vec![0.5, 1.0]);
        assert_eq!(a_coeffs(1, 0.2, 0.4).unwrap(), vec![0.0, 0.5, 1.0]);
        for m in 0..=8u32 {
            let c = a_coeffs(m, 0.2, 0.4).unwrap();
            for i in 0..8 {
                let x = -1.0 + 2.0 * i as f64 / 7.0;
                let poly: f64 = c.iter().rev().fold(0.0, |acc, &ci| acc * x + ci);
                assert!((poly - (x + 0.5) * chebyshev_t(m, x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn s3_against_quadrature() {
        let (t, tp, t2, t2p) = (1.1, 0.7, 0.9, 1.3);
        let (a, b) = ab_s3(t, tp, t2, t2p);
        for m in 0..=6 {
            let c = fourier_coeff_s3(m, t, tp, t2, t2p).unwrap();
            let q = fourier_coeff_quadrature_ab(3, m, a, b, 1e-12).unwrap();
            assert!((c.value - q.value).abs() < 1e-8 * (1.0 + c.value.abs()), "{m}: {} {}", c.value, q.value);
            assert_eq!(c.method, Method::Elliptic);
        }
        let lit = fourier_coeff_s3_ab(0, a, b, S3Prefactor::Swapped).unwrap().value;
        let q = fourier_coeff_quadrature_ab(3, 0, a, b, 1e-12).unwrap().value;
        assert!((lit - q).abs() > 1e-3);
        // past the antipodal line
        let (t, tp, t2, t2p) = (2.2, 1.9, 0.8, 1.2);
        let (a, b) = ab_s3(t, tp, t2, t2p);
        for m in 0..=4 {
            let c = fourier_coeff_s3(m, t, tp, t2, t2p).unwrap().value;
            let q = fourier_coeff_quadrature_ab(3, m, a, b, 1e-12).unwrap().value;
            assert!((c - q).abs() < 1e-8 * (1.0 + c.abs()), "{m}: {c} {q}");
        }
    }

    #[test]
    fn s3_m0_forms() {
        let (t, tp, t2, t2p) = (1.1, 0.7, 0.9, 1.3);
        let a = fourier_coeff_s3_m0(t, tp, t2, t2p).unwrap();
        let b = fourier_coeff_s3(0, t, tp, t2, t2p).unwrap().value;
        assert!((a - b).abs() < 1e-12);
        // Theta = pi/2 for every psi
        let z = fourier_coeff_s3_m0(PI / 2.0, 0.4, PI / 2.0, 0.9).unwrap();
        assert!(z.abs() < 1e-14);
        // Hopf: vartheta' = 0 gives A / sqrt(1 - A^2)
        let h = fourier_coeff_hopf_m0(0.5, 0.0, 0.3).unwrap();
        let aa = 0.5f64.cos() * 0.3f64.cos();
        assert!((h - aa / (1.0 - aa * aa).sqrt()).abs() < 1e-14);
        let h = fourier_coeff_hopf_m0(0.5, 0.9, 0.3).unwrap();
        let (ha, hb) = (0.5f64.cos() * 0.9f64.cos() * 0.3f64.cos(), 0.5f64.sin() * 0.9f64.sin());
        let q = fourier_coeff_quadrature_ab(3, 0, ha, hb, 1e-12).unwrap().value;
        assert!((h - q).abs() < 1e-9);
    }

    #[test]
    fn s3_small_b() {
        let (a, b) = (0.3, 1e-13);
        let c = fourier_coeff_s3_ab(0, a, b, S3Prefactor::Derived).unwrap();
        assert!((c.value - 0.3 / (0.91f64).sqrt()).abs() < 1e-12);
        let c1 = fourier_coeff_s3_ab(1, a, b, S3Prefactor::Derived).unwrap();
        assert!(c1.value.abs() < 1e-10);
        let b = 1e-3;
        for m in 0..3 {
            let c = fourier_coeff_s3_ab(m, a, b, S3Prefactor::Derived).unwrap().value;
            let q = fourier_coeff_quadrature_ab(3, m, a, b, 1e-12).unwrap().value;
            assert!((c - q).abs() < 1e-8, "{m} {c} {q}");
        }
    }

    #[test]
    fn quadrature_oracle_other_dims() {
        let p = SpherePoint::new(1.0, 0.9, vec![], 0.0).unwrap();
        let q = SpherePoint::new(1.0, 0.0, vec![], 0.0).unwrap();
        let c = fourier_coeff_quadrature(2, 0, &p, &q, 1e-12).unwrap().value;
        assert!((c - (1.0 / 0.45f64.tan()).ln()).abs() < 1e-12);
        let p = SpherePoint::new(1.0, 1.2, vec![0.5, 2.0], 0.0).unwrap();
        let q = SpherePoint::new(1.0, 0.8, vec![1.1, 0.7], 0.0).unwrap();
        let c = fourier_coeff_quadrature(4, 1, &p, &q, 1e-10).unwrap();
        assert!(c.value.is_finite() && c.est_error < 1e-7);
    }

    #[test]
    fn parseval_reconstruction() {
        let (t, tp, t2, t2p) = (1.0, 1.6, 0.8, 1.9);
        let (a, b) = ab_s3(t, tp, t2, t2p);
        let table = fourier_table_s3(32, t, tp, t2, t2p).unwrap();
        assert_eq!(table[3].method, Method::Elliptic);
        assert_eq!(table[32].method, Method::Quadrature);
        let mut prev = f64::INFINITY;
        for &mm in &[4usize, 8, 16, 32] {
            let mut worst: f64 = 0.0;
            for i in 0..=50 {
                let psi = PI * i as f64 / 50.0;
                let s: f64 = table[..=mm].iter().map(|c| c.value * (c.m as f64 * psi).cos()).sum();
                let exact = j_d_from_cos(3, a + b * psi.cos()).unwrap();
                worst = worst.max((s - exact).abs());
            }
            assert!(worst < prev, "{mm}: {worst}");
            prev = worst;
        }
    }

    #[test]
    fn flat_limit_m0() {
        let (r, rp, t2, t2p): (f64, f64, f64, f64) = (0.6, 1.1, 0.7, 1.4);
        let e = euclidean_m0_3d(r * t2.sin(), r * t2.cos(), rp * t2p.sin(), rp * t2p.cos()).unwrap();
        let mut prev = f64::INFINITY;
        for &big in &[1e1, 1e2, 1e3] {
            let g = fourier_coeff_s3_m0(r / big, rp / big, t2, t2p).unwrap();
            let dev = ((g / big - e) / e).abs();
            assert!(dev < prev / 50.0, "{big}: {dev}");
            prev = dev;
        }
    }
}

//! Gegenbauer expansion of G_R^d in the separation angle gamma, the radial factors
//! u_l, the S^3 addition theorem for the Fourier coefficients, and the l = 0 kernel.
//!
//! The expansion in powers of the radial ratio converges to G only for
//! theta + theta' < pi. Past that line the sums use G(x, x') = -G(x, -x') with the
//! point of larger radial angle reflected: theta_> -> pi - theta_>, cos gamma -> -cos gamma.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{neumann, FourierCoefficient, Method};
use crate::fundsol::greens_from_angle;
use crate::geometry::{separation_cos_gamma, SpherePoint};
use crate::specfun::{
    assoc_legendre_p, ferrers_p_neg_family, ferrers_p_pos_half_family, ferrers_q_int_family, gamma,
};

/// Largest degree any expansion here will sum to (factorial growth of the Ferrers
/// families overflows beyond this).
pub const L_CAP: usize = 150;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    EvenD,
    OddD,
}

/// u_l(theta, theta') together with the route used to compute it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialPair {
    pub d: usize,
    pub l: usize,
    pub u_l_value: f64,
    pub branch: Parity,
}

fn check_open(name: &'static str, t: f64) -> Result<()> {
    if !(t > 0.0 && t < PI) {
        return Err(Error::domain(name, t, "radial angle must lie in (0, pi)"));
    }
    Ok(())
}

// u_l for l = 0..=l_max at once.
fn radial_family(d: usize, r: f64, l_max: usize, theta: f64, theta_p: f64) -> Result<Vec<f64>> {
    if d < 3 {
        return Err(Error::domain("d", d as f64, "Gegenbauer expansion needs d >= 3"));
    }
    if !(r > 0.0) {
        return Err(Error::domain("R", r, "radius must be positive"));
    }
    check_open("theta", theta)?;
    check_open("theta'", theta_p)?;
    if l_max > L_CAP {
        return Err(Error::domain("L", l_max as f64, "degree beyond supported range"));
    }
    let nu = d as f64 / 2.0 - 1.0;
    let (lo, hi) = if theta <= theta_p { (theta, theta_p) } else { (theta_p, theta) };
    let n = l_max + 1;
    let pl = ferrers_p_neg_family(nu, nu, n, lo.cos())?;
    let ss = (theta.sin() * theta_p.sin()).powf(-nu) * r.powi(2 - d as i32);
    let out = if d.is_multiple_of(2) {
        let nn = d as u32 / 2 - 1;
        let q = ferrers_q_int_family(nn, nn, n, hi.cos())?;
        (0..n)
            .map(|l| {
                let sign = if (nn as usize + l).is_multiple_of(2) { 1.0 } else { -1.0 };
                sign * ss * pl[l] * q[l]
            })
            .collect()
    } else {
        let pu = ferrers_p_pos_half_family(nu, nu, n, hi.cos())?;
        let base = (d - 3) / 2;
        (0..n)
            .map(|l| {
                let sign = if (base + l).is_multiple_of(2) { 1.0 } else { -1.0 };
                0.5 * PI * sign * ss * pl[l] * pu[l]
            })
            .collect()
    };
    Ok(out)
}

/// Radial factor u_l(theta, theta') of the Gegenbauer expansion.
pub fn radial_u_l(d: usize, r: f64, l: usize, theta: f64, theta_p: f64) -> Result<RadialPair> {
    let v = radial_family(d, r, l, theta, theta_p)?;
    Ok(RadialPair {
        d,
        l,
        u_l_value: v[l],
        branch: if d.is_multiple_of(2) { Parity::EvenD } else { Parity::OddD },
    })
}

/// Geometric rate of the Gegenbauer (and S^2 Fourier) series in l:
/// max(t_< / t_>, min(t t', 1/(t t'))) with t = tan(theta/2).
pub fn convergence_ratio(theta: f64, theta_p: f64) -> f64 {
    let (a, b) = ((0.5 * theta).tan(), (0.5 * theta_p).tan());
    let direct = a.min(b) / a.max(b);
    let prod = a * b;
    direct.max(prod.min(1.0 / prod))
}

// C_l^mu(x) for l = 0..n-1.
fn gegenbauer_family(mu: f64, n: usize, x: f64) -> Vec<f64> {
    let mut c = Vec::with_capacity(n);
    if n > 0 {
        c.push(1.0);
    }
    if n > 1 {
        c.push(2.0 * mu * x);
    }
    for l in 2..n {
        let lf = l as f64;
        let v = (2.0 * x * (lf + mu - 1.0) * c[l - 1] - (lf + 2.0 * mu - 2.0) * c[l - 2]) / lf;
        c.push(v);
    }
    c
}

/// Terms of the Gegenbauer series, l = 0..=l_max, for radial angles and cos gamma.
/// Reflection is applied when theta + theta' > pi.
pub fn gegenbauer_terms(d: usize, r: f64, theta: f64, theta_p: f64, cos_gamma: f64, l_max: usize) -> Result<Vec<f64>> {
    check_open("theta", theta)?;
    check_open("theta'", theta_p)?;
    let (t, tp, cg, sign) = if theta + theta_p > PI {
        if theta > theta_p {
            (PI - theta, theta_p, -cos_gamma, -1.0)
        } else {
            (theta, PI - theta_p, -cos_gamma, -1.0)
        }
    } else {
        (theta, theta_p, cos_gamma, 1.0)
    };
    if (t - tp).abs() < 1e-14 && (cg - 1.0).abs() < 1e-14 {
        return Err(Error::singular("Theta", 0.0, "coincident or antipodal points"));
    }
    let u = radial_family(d, r, l_max, t, tp)?;
    let mu = d as f64 / 2.0 - 1.0;
    let c = gegenbauer_family(mu, l_max + 1, cg);
    let pre = sign * gamma(d as f64 / 2.0) / (2.0 * PI.powf(d as f64 / 2.0) * (d as f64 - 2.0));
    Ok((0..=l_max)
        .map(|l| pre * (2.0 * l as f64 + d as f64 - 2.0) * u[l] * c[l])
        .collect())
}

/// Partial sum l = 0..=L of the Gegenbauer expansion of G_R^d(p, q).
pub fn gegenbauer_sum(d: usize, r: f64, p: &SpherePoint, q: &SpherePoint, l_max: usize) -> Result<f64> {
    let cg = check_pair(d, r, p, q)?;
    Ok(gegenbauer_terms(d, r, p.theta(), q.theta(), cg, l_max)?.iter().sum())
}

fn check_pair(d: usize, r: f64, p: &SpherePoint, q: &SpherePoint) -> Result<f64> {
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
    separation_cos_gamma(p, q).map(|c| c.clamp(-1.0, 1.0))
}

/// Gegenbauer sum truncated automatically: stops once three consecutive terms fall
/// below `tol` times the running sum scale, or at `l_max`. Returns (value, last l used).
pub fn gegenbauer_sum_auto(d: usize, r: f64, p: &SpherePoint, q: &SpherePoint, tol: f64, l_max: usize) -> Result<(f64, usize)> {
    let cg = check_pair(d, r, p, q)?;
    let l_max = l_max.min(L_CAP);
    let mut block = 16.min(l_max);
    loop {
        let terms = gegenbauer_terms(d, r, p.theta(), q.theta(), cg, block)?;
        let mut sum = 0.0;
        let mut scale: f64 = 0.0;
        let mut quiet = 0;
        for (l, t) in terms.iter().enumerate() {
            if !t.is_finite() {
                break;
            }
            sum += t;
            scale = scale.max(sum.abs()).max(t.abs());
            if t.abs() <= tol * scale {
                quiet += 1;
                if quiet == 3 {
                    return Ok((sum, l));
                }
            } else {
                quiet = 0;
            }
        }
        if block == l_max {
            return Err(Error::Convergence(format!(
                "Gegenbauer series not converged by l = {l_max}"
            )));
        }
        block = (2 * block).min(l_max);
    }
}

/// Fourier coefficient of g^3 on S^3 from the addition theorem, summed over l = |m|..=L.
pub fn addition_fourier_coeff(m: u32, theta: f64, theta_p: f64, theta2: f64, theta2_p: f64, l_max: usize) -> Result<FourierCoefficient> {
    check_open("theta", theta)?;
    check_open("theta'", theta_p)?;
    for (n, t) in [("theta_2", theta2), ("theta_2'", theta2_p)] {
        if !(0.0..=PI).contains(&t) {
            return Err(Error::domain(n, t, "polar angle must lie in [0, pi]"));
        }
    }
    if theta + theta_p > PI {
        let mut c = if theta > theta_p {
            addition_fourier_coeff(m, PI - theta, theta_p, PI - theta2, theta2_p, l_max)?
        } else {
            addition_fourier_coeff(m, theta, PI - theta_p, theta2, PI - theta2_p, l_max)?
        };
        if m.is_multiple_of(2) {
            c.value = -c.value;
        }
        return Ok(c);
    }
    let mi = m as usize;
    let zero = FourierCoefficient {
        m,
        value: 0.0,
        method: Method::AdditionTheorem,
        est_error: 0.0,
    };
    if mi > l_max {
        return Ok(zero);
    }
    if l_max > L_CAP {
        return Err(Error::domain("L", l_max as f64, "degree beyond supported range"));
    }
    let (lo, hi) = if theta <= theta_p { (theta, theta_p) } else { (theta_p, theta) };
    let n = l_max + 1;
    let pl = ferrers_p_neg_family(0.5, 0.5, n, lo.cos())?;
    let pu = ferrers_p_pos_half_family(0.5, 0.5, n, hi.cos())?;
    let (x2, x2p) = (theta2.cos(), theta2_p.cos());
    let mut sum = 0.0;
    let mut last = 0.0;
    for l in mi..=l_max {
        let a = assoc_legendre_p(l as u32, m as i32, x2)?;
        let b = assoc_legendre_p(l as u32, m as i32, x2p)?;
        let mut ratio = 1.0;
        for k in (l - mi + 1)..=(l + mi) {
            ratio /= k as f64;
        }
        let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
        last = sign * (2.0 * l as f64 + 1.0) * ratio * a * b * pl[l] * pu[l];
        sum += last;
    }
    let pre = PI * neumann(m) / (2.0 * (theta.sin() * theta_p.sin()).sqrt());
    Ok(FourierCoefficient {
        m,
        value: pre * sum,
        method: Method::AdditionTheorem,
        est_error: (pre * last).abs(),
    })
}

/// The l = 0 part of G_R^d, a function of the larger radial angle only.
pub fn sph_symmetric_h(d: usize, r: f64, theta_gt: f64) -> Result<f64> {
    greens_from_angle(d, r, theta_gt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::fourier_coeff_s3;
    use crate::fundsol::greens;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn point(rng: &mut ChaCha8Rng, d: usize, r: f64) -> SpherePoint {
        let mids = (0..d - 2).map(|_| rng.gen_range(0.1..3.0)).collect();
        SpherePoint::new(r, rng.gen_range(0.3..2.8), mids, rng.gen_range(-PI..PI)).unwrap()
    }

    #[test]
    fn l0_kernel() {
        let t: f64 = 0.8;
        assert!((sph_symmetric_h(2, 1.0, t).unwrap() - (1.0 / (t / 2.0).tan()).ln() / (2.0 * PI)).abs() < 1e-15);
        assert!((sph_symmetric_h(3, 2.0, t).unwrap() - 1.0 / (8.0 * PI * t.tan())).abs() < 1e-15);
        let p = SpherePoint::new(1.0, 1.0, vec![0.0, 0.0, 0.0], 0.0).unwrap();
        let q = SpherePoint::new(1.0, 0.0, vec![0.0, 0.0, 0.0], 0.0).unwrap();
        assert!((sph_symmetric_h(5, 1.0, 1.0).unwrap() - greens(5, 1.0, &p, &q).unwrap().value).abs() < 1e-15);
        // d = 3, l = 0 term alone is (1/(4 pi R)) cot theta_>
        let terms = gegenbauer_terms(3, 1.5, 0.4, 1.1, 0.3, 0).unwrap();
        assert!((terms[0] - 1.0 / (4.0 * PI * 1.5 * 1.1f64.tan())).abs() < 1e-14);
    }

    #[test]
    fn converges_to_greens() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for d in 3..=5 {
            let mut n = 0;
            while n < 6 {
                let p = point(&mut rng, d, 1.3);
                let q = point(&mut rng, d, 1.3);
                if convergence_ratio(p.theta(), q.theta()) > 0.75 {
                    continue;
                }
                n += 1;
                let g = greens(d, 1.3, &p, &q).unwrap().value;
                let s = gegenbauer_sum(d, 1.3, &p, &q, 60).unwrap();
                assert!((s - g).abs() < 1e-6 * g.abs().max(1e-2), "d={d}: {s} {g}");
                let (sa, _) = gegenbauer_sum_auto(d, 1.3, &p, &q, 1e-14, 150).unwrap();
                assert!((sa - g).abs() < 1e-9 * g.abs().max(1e-2), "d={d}: {sa} {g}");
            }
        }
    }

    #[test]
    fn continuity_and_jump() {
        let h = 1e-4;
        for d in 3..=5 {
            for l in 0..=4 {
                for &r in &[1.0, 2.0] {
                    let t0 = 1.1;
                    let a = radial_u_l(d, r, l, t0 + 1e-10, t0).unwrap().u_l_value;
                    let b = radial_u_l(d, r, l, t0 - 1e-10, t0).unwrap().u_l_value;
                    assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
                    let v = |t: f64| {
                        (t.sin() * t0.sin()).powf((d as f64 - 1.0) / 2.0) * radial_u_l(d, r, l, t, t0).unwrap().u_l_value
                    };
                    // one-sided 3-point derivatives
                    let right = (-3.0 * v(t0) + 4.0 * v(t0 + h) - v(t0 + 2.0 * h)) / (2.0 * h);
                    let left = (3.0 * v(t0) - 4.0 * v(t0 - h) + v(t0 - 2.0 * h)) / (2.0 * h);
                    let jump = right - left;
                    let want = -r.powi(2 - d as i32);
                    assert!((jump - want).abs() < 1e-5, "d={d} l={l} R={r}: {jump}");
                }
            }
        }
    }

    #[test]
    fn homogeneous_equation() {
        let h = 1e-4;
        for d in 3..=5 {
            for l in 0..=4 {
                let tp = 0.7;
                let u = |t: f64| radial_u_l(d, 1.0, l, t, tp).unwrap().u_l_value;
                for &t in &[1.2, 2.0] {
                    let (um, u0, up) = (u(t - h), u(t), u(t + h));
                    let d2 = (up - 2.0 * u0 + um) / (h * h);
                    let d1 = (up - um) / (2.0 * h);
                    let lf = l as f64;
                    let res = d2 + (d as f64 - 1.0) * d1 / t.tan() - lf * (lf + d as f64 - 2.0) * u0 / t.sin().powi(2);
                    let scale = d2.abs() + u0.abs() + d1.abs();
                    assert!(res.abs() < 1e-4 * scale, "d={d} l={l}: {res}");
                }
            }
        }
    }

    #[test]
    fn addition_theorem() {
        let c = addition_fourier_coeff(5, 1.2, 0.8, 1.0, 1.4, 4).unwrap();
        assert_eq!(c.value, 0.0);
        for m in 1..3 {
            let c = addition_fourier_coeff(m, 1.2, 0.8, 0.0, 1.4, 30).unwrap();
            assert!(c.value.abs() < 1e-15);
        }
        for &(t, tp, t2, t2p) in &[(1.2, 0.8, 1.0, 1.4), (2.3, 1.6, 0.6, 2.0)] {
            for m in 0..=4 {
                let a = addition_fourier_coeff(m, t, tp, t2, t2p, 40).unwrap().value;
                let e = fourier_coeff_s3(m, t, tp, t2, t2p).unwrap().value;
                assert!((a - e).abs() < 1e-6, "m={m}: {a} {e}");
            }
        }
    }
}

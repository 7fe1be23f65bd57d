//! Ferrers functions P_nu^mu(x), Q_nu^mu(x) on the cut -1 < x < 1 (DLMF conventions).
//!
//! Coverage is the set of degree/order families needed by the expansions: any real degree
//! with non-positive order, integer or half-odd-integer positive orders, the explicit
//! Q_nu^{-nu} hypergeometric form, and integer degree/order for Q.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::config::ExpansionConfig;
use crate::error::{Error, Result};

use super::hypergeometric::gauss_2f1_with;
use super::poly::{factorial, pochhammer};
use super::{gamma, is_half_integer, is_integer};

/// Degree and order of a Ferrers function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FerrersIndex {
    pub nu: f64,
    pub mu: f64,
}

impl FerrersIndex {
    pub fn new(nu: f64, mu: f64) -> Self {
        Self { nu, mu }
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x > -1.0 && x < 1.0) {
        return Err(Error::domain("x", x, "Ferrers functions are evaluated on (-1, 1) only"));
    }
    Ok(())
}

fn parity(n: i64) -> f64 {
    if n.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// P_nu^{-sigma}(x) for sigma >= 0 from the hypergeometric representation
/// ((1-x)/(1+x))^{sigma/2} 2F1(nu+1, -nu; 1+sigma; (1-x)/2) / Gamma(1+sigma).
fn p_negative_order(nu: f64, sigma: f64, x: f64, cfg: &ExpansionConfig) -> Result<f64> {
    let z = 0.5 * (1.0 - x);
    // For x < 0 with integer nu - sigma use P^{-sigma}(-x) = (-1)^{nu-sigma} P^{-sigma}(x)
    // to keep the series argument below 1/2.
    if z > 0.5 && is_integer(nu - sigma) && !is_integer(nu) {
        let n = (nu - sigma).round() as i64;
        return Ok(parity(n) * p_negative_order(nu, sigma, -x, cfg)?);
    }
    let ratio = (1.0 - x) / (1.0 + x);
    let pref = ratio.powf(0.5 * sigma) / gamma(1.0 + sigma);
    if pref == 0.0 {
        return Ok(0.0);
    }
    Ok(pref * gauss_2f1_with(nu + 1.0, -nu, 1.0 + sigma, z, cfg)?)
}

/// P_nu^{mu}(x) for half-odd-integer mu > 0 by upward recurrence in the order,
/// started from the elementary forms of P_nu^{+-1/2}. Returns orders 1/2, 3/2, ... up to mu_top.
fn p_half_upward(nu: f64, mu_top: f64, x: f64) -> Vec<f64> {
    let theta = x.acos();
    let s = ((1.0 - x) * (1.0 + x)).sqrt();
    let amp = (2.0 / (PI * s)).sqrt();
    let h = nu + 0.5;
    let p_minus = if h.abs() < 1e-300 {
        amp * theta
    } else {
        amp * (h * theta).sin() / h
    };
    let p_plus = amp * (h * theta).cos();
    let count = (mu_top - 0.5).round() as usize + 1;
    let mut out = Vec::with_capacity(count);
    out.push(p_plus);
    let (mut prev, mut cur) = (p_minus, p_plus);
    let r = x / s;
    // s is the order of `prev`: P^{s+2} = -2(s+1) x/sqrt(1-x^2) P^{s+1} - (nu-s)(nu+s+1) P^s
    let mut order = -0.5;
    while out.len() < count {
        let next = -2.0 * (order + 1.0) * r * cur - (nu - order) * (nu + order + 1.0) * prev;
        prev = cur;
        cur = next;
        order += 1.0;
        out.push(cur);
    }
    out
}

/// Ferrers function of the first kind with default truncation settings.
pub fn ferrers_p(idx: FerrersIndex, x: f64) -> Result<f64> {
    ferrers_p_with(idx, x, &ExpansionConfig::default())
}

/// Ferrers function of the first kind P_nu^mu(x).
pub fn ferrers_p_with(idx: FerrersIndex, x: f64, cfg: &ExpansionConfig) -> Result<f64> {
    check_x(x)?;
    let FerrersIndex { nu, mu } = idx;
    if !nu.is_finite() || !mu.is_finite() {
        return Err(Error::Argument("Ferrers degree and order must be finite".into()));
    }
    // P_{-nu-1} = P_nu
    let nu = if nu < -0.5 { -nu - 1.0 } else { nu };
    if mu <= 0.0 {
        return p_negative_order(nu, -mu, x, cfg);
    }
    if is_integer(mu) {
        let m = mu.round();
        if is_integer(nu) && m > nu.round() {
            return Ok(0.0);
        }
        let ratio = pochhammer(nu - m + 1.0, 2 * m as u32);
        return Ok(parity(m as i64) * ratio * p_negative_order(nu, m, x, cfg)?);
    }
    if is_half_integer(mu) {
        return Ok(*p_half_upward(nu, mu, x).last().unwrap());
    }
    // generic positive order: ((1+x)/(1-x))^{mu/2} 2F1(nu+1, -nu; 1-mu; (1-x)/2) / Gamma(1-mu)
    let pref = ((1.0 + x) / (1.0 - x)).powf(0.5 * mu) / gamma(1.0 - mu);
    Ok(pref * gauss_2f1_with(nu + 1.0, -nu, 1.0 - mu, 0.5 * (1.0 - x), cfg)?)
}

/// Q_nu^{-nu}(x) from its explicit hypergeometric form
/// sqrt(pi) x (1-x^2)^{nu/2} / (2^nu Gamma(nu + 1/2)) 2F1(1/2, nu+1; 3/2; x^2).
pub fn ferrers_q_minus_nu(nu: f64, x: f64) -> Result<f64> {
    ferrers_q_minus_nu_with(nu, x, &ExpansionConfig::default())
}

fn ferrers_q_minus_nu_with(nu: f64, x: f64, cfg: &ExpansionConfig) -> Result<f64> {
    check_x(x)?;
    if is_half_integer(nu) && nu < 0.0 {
        return Err(Error::Representation(format!(
            "Q_nu^(-nu) formula has a Gamma pole at nu = {nu}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let w = (1.0 - x) * (1.0 + x);
    let pref = PI.sqrt() * x * w.powf(0.5 * nu) / (2f64.powf(nu) * gamma(nu + 0.5));
    Ok(pref * gauss_2f1_with(0.5, nu + 1.0, 1.5, x * x, cfg)?)
}

/// Q_n^m(x) for integer n >= 0 and every order 0..=m_max (upward order recurrence).
fn q_integer_orders(n: u32, m_max: u32, x: f64) -> Vec<f64> {
    let w = (1.0 - x) * (1.0 + x);
    let s = w.sqrt();
    let at = x.atanh();
    // order 0 and order 1 by degree recurrence up to n
    let (mut a0, mut a1) = (at, x * at - 1.0);
    let (mut b0, mut b1) = (-1.0 / s, -s * (at + x / w));
    for k in 1..n {
        let kf = k as f64;
        let a2 = ((2.0 * kf + 1.0) * x * a1 - kf * a0) / (kf + 1.0);
        // (nu - m + 1) Q_{nu+1}^m = (2nu+1) x Q_nu^m - (nu+m) Q_{nu-1}^m with m = 1
        let b2 = ((2.0 * kf + 1.0) * x * b1 - (kf + 1.0) * b0) / kf;
        a0 = a1;
        a1 = a2;
        b0 = b1;
        b1 = b2;
    }
    let (q0, q1) = if n == 0 { (a0, b0) } else { (a1, b1) };
    let mut out = vec![q0];
    if m_max == 0 {
        return out;
    }
    out.push(q1);
    let nf = n as f64;
    let r = x / s;
    for m in 0..m_max.saturating_sub(1) {
        let mf = m as f64;
        let next = -2.0 * (mf + 1.0) * r * out[m as usize + 1] - (nf - mf) * (nf + mf + 1.0) * out[m as usize];
        out.push(next);
    }
    out
}

/// Ferrers function of the second kind with default truncation settings.
pub fn ferrers_q(idx: FerrersIndex, x: f64) -> Result<f64> {
    ferrers_q_with(idx, x, &ExpansionConfig::default())
}

/// Ferrers function of the second kind Q_nu^mu(x).
///
/// mu = -nu uses the explicit hypergeometric form (integer nu near the endpoints goes
/// through the integer recurrences, where the series converges too slowly). Integer degree
/// and order use recurrences from Q_0 = atanh x; half-odd-integer orders use the
/// connection formulas with P.
pub fn ferrers_q_with(idx: FerrersIndex, x: f64, cfg: &ExpansionConfig) -> Result<f64> {
    check_x(x)?;
    let FerrersIndex { nu, mu } = idx;
    if !nu.is_finite() || !mu.is_finite() {
        return Err(Error::Argument("Ferrers degree and order must be finite".into()));
    }
    let int_nu = is_integer(nu) && nu.round() >= 0.0;
    if (mu + nu).abs() < 1e-12 && !(int_nu && x * x > 0.9) && !(is_half_integer(nu) && nu < 0.0)
    {
        return ferrers_q_minus_nu_with(nu, x, cfg);
    }
    if int_nu && is_integer(mu) {
        let n = nu.round() as u32;
        let m = mu.round() as i64;
        if m >= 0 {
            return Ok(*q_integer_orders(n, m as u32, x).last().unwrap());
        }
        let am = (-m) as u32;
        if am > n {
            return Err(Error::Representation(format!(
                "Q_{n}^{m} with |m| > n is not covered by the integer recurrences"
            )));
        }
        let q = *q_integer_orders(n, am, x).last().unwrap();
        return Ok(parity(am as i64) * factorial(n - am) / factorial(n + am) * q);
    }
    if is_half_integer(mu) {
        let sigma = mu.abs();
        if mu < 0.0 {
            // Q^{-s} = (pi/2) sin(s pi) Gamma(nu-s+1)/Gamma(nu+s+1) P^{s}
            let g = nu - sigma + 1.0;
            if super::is_nonpositive_integer(g) {
                return Err(Error::Representation(format!(
                    "Gamma pole in the connection formula for Q_{nu}^{mu}"
                )));
            }
            let sin = parity((sigma - 0.5).round() as i64);
            let ratio = gamma(g) / gamma(nu + sigma + 1.0);
            let p = ferrers_p_with(FerrersIndex::new(nu, sigma), x, cfg)?;
            return Ok(0.5 * PI * sin * ratio * p);
        }
        // Q^{s} = -(pi/2) / sin(s pi) Gamma(nu+s+1)/Gamma(nu-s+1) P^{-s}
        let g = nu - sigma + 1.0;
        if super::is_nonpositive_integer(g) {
            return Ok(0.0);
        }
        let sin = parity((sigma - 0.5).round() as i64);
        let ratio = gamma(nu + sigma + 1.0) / gamma(g);
        let p = ferrers_p_with(FerrersIndex::new(nu, -sigma), x, cfg)?;
        return Ok(-0.5 * PI / sin * ratio * p);
    }
    Err(Error::Representation(format!(
        "no implemented representation for Q_{nu}^{mu}"
    )))
}

/// P_nu^{-(sigma0 + l)}(x) for l = 0..count, computed by backward recurrence from the two
/// highest orders (the family is minimal as the order grows).
pub fn ferrers_p_neg_family(nu: f64, sigma0: f64, count: usize, x: f64) -> Result<Vec<f64>> {
    check_x(x)?;
    let cfg = ExpansionConfig::default();
    let nu = if nu < -0.5 { -nu - 1.0 } else { nu };
    if count == 0 {
        return Ok(Vec::new());
    }
    let top = count - 1;
    let mut out = vec![0.0; count];
    out[top] = p_negative_order(nu, sigma0 + top as f64, x, &cfg)?;
    if count == 1 {
        return Ok(out);
    }
    out[top - 1] = p_negative_order(nu, sigma0 + (top - 1) as f64, x, &cfg)?;
    if out[top].abs() < 1e-280 || out[top - 1].abs() < 1e-280 {
        // seeds underflowed; the recurrence would only propagate zeros
        for (l, o) in out.iter_mut().enumerate().take(top - 1) {
            *o = p_negative_order(nu, sigma0 + l as f64, x, &cfg)?;
        }
        return Ok(out);
    }
    let r = x / ((1.0 - x) * (1.0 + x)).sqrt();
    for l in (0..top.saturating_sub(1)).rev() {
        let o = -(sigma0 + l as f64 + 2.0);
        out[l] = -2.0 * (o + 1.0) * r * out[l + 1] - (nu - o) * (nu + o + 1.0) * out[l + 2];
    }
    Ok(out)
}

/// P_nu^{mu0 + l}(x), l = 0..count, for half-odd-integer mu0 > 0 (upward recurrence).
pub fn ferrers_p_pos_half_family(nu: f64, mu0: f64, count: usize, x: f64) -> Result<Vec<f64>> {
    check_x(x)?;
    if !(is_half_integer(mu0) && mu0 > 0.0) {
        return Err(Error::domain("mu0", mu0, "family start must be a positive half-odd integer"));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let all = p_half_upward(nu, mu0 + (count - 1) as f64, x);
    let skip = (mu0 - 0.5).round() as usize;
    Ok(all[skip..].to_vec())
}

/// Q_n^{m0 + l}(x), l = 0..count, for integer degree n >= 0 and order m0 >= 0.
pub fn ferrers_q_int_family(n: u32, m0: u32, count: usize, x: f64) -> Result<Vec<f64>> {
    check_x(x)?;
    if count == 0 {
        return Ok(Vec::new());
    }
    let all = q_integer_orders(n, m0 + count as u32 - 1, x);
    Ok(all[m0 as usize..].to_vec())
}

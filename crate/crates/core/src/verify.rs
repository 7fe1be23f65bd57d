//! Self-verification suites: every closed form checked against an independent oracle
//! (quadrature, finite differences, or a Euclidean limit). Sampling is deterministic.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{
    elliptic_data, fourier_coeff_hopf_m0, fourier_coeff_quadrature_ab, fourier_coeff_s2, fourier_coeff_s3,
    fourier_coeff_s3_ab, fourier_coeff_s3_m0, v_sequence, v_sequence_with, S3Prefactor, VRecurrence,
};
use crate::fundsol::{greens, greens_from_angle, newtonian_from_distance};
use crate::gegenbauer::{addition_fourier_coeff, convergence_ratio, gegenbauer_terms, radial_u_l};
use crate::geometry::{ab_s3, geodesic_distance, separation_cos_gamma, HopfPoint, SpherePoint};
use crate::potentials::{
    binding_2disc, binding_2disc_euclidean, binding_3ball, binding_by_quadrature, c_r_2disc, convolve_axisymmetric,
    curve_segment_quadrature, kepler_identity, kepler_pair, oscillator_identity, oscillator_pair, potential_2disc,
    potential_2disc_euclidean, potential_3ball, potential_3ball_euclidean, potential_curve_segment,
    potential_line_segment_euclidean, radial_laplacian, UniformCap,
};
use crate::quadrature::{integrate, QuadOptions};
use crate::specfun::{ferrers_p, ferrers_q, FerrersIndex};

/// Suite names in run order.
pub const SUITES: &[&str] = &[
    "fourier-s2",
    "fourier-s3",
    "v-sequence",
    "gegenbauer",
    "addition",
    "wronskian",
    "jump",
    "potentials",
    "poisson",
    "binding",
    "flat-limit",
    "identities",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Restrict dimension-indexed suites to this d.
    pub d: Option<usize>,
    /// Radii for the flat-space slope fits.
    #[serde(rename = "R")]
    pub radii: Vec<f64>,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { d: None, radii: vec![1e2, 1e3, 1e4], seed: 20_240_917 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// Error of the case closest to (or furthest past) its tolerance.
    pub max_error: f64,
    pub tolerance: f64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

struct Acc {
    name: &'static str,
    cases: usize,
    worst: (f64, f64, f64),
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Acc {
    fn new(name: &'static str) -> Self {
        Self { name, cases: 0, worst: (f64::NEG_INFINITY, 0.0, 0.0), failures: Vec::new(), notes: Vec::new() }
    }

    fn check(&mut self, label: impl FnOnce() -> String, err: f64, tol: f64) {
        self.cases += 1;
        let ratio = if err.is_nan() { f64::INFINITY } else { err / tol };
        if ratio > self.worst.0 {
            self.worst = (ratio, err, tol);
        }
        if !(err <= tol) {
            self.failures.push(format!("{}: error {err:.3e} > {tol:.1e}", label()));
        }
    }

    fn fail(&mut self, label: String) {
        self.cases += 1;
        self.failures.push(label);
    }

    fn try_check(&mut self, label: impl Fn() -> String, r: Result<(f64, f64)>) {
        match r {
            Ok((err, tol)) => self.check(label, err, tol),
            Err(e) => self.fail(format!("{}: {e}", label())),
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name.to_string(),
            passed: self.failures.is_empty() && self.cases > 0,
            cases: self.cases,
            max_error: self.worst.1,
            tolerance: self.worst.2,
            failures: self.failures,
            notes: self.notes,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

/// Least-squares slope of log(err) against log(R).
pub fn loglog_slope(radii: &[f64], errs: &[f64]) -> f64 {
    let n = radii.len() as f64;
    let xs: Vec<f64> = radii.iter().map(|r| r.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

fn dims(opts: &VerifyOptions, default: &[usize]) -> Vec<usize> {
    match opts.d {
        Some(d) => vec![d],
        None => default.to_vec(),
    }
}

fn rng(opts: &VerifyOptions, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Runs one suite by name.
pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let rep = match name {
        "fourier-s2" => suite_s2(opts),
        "fourier-s3" => suite_s3(opts),
        "v-sequence" => v_sequence_suite(opts),
        "gegenbauer" => gegenbauer(opts),
        "addition" => addition(opts),
        "wronskian" => wronskian(opts),
        "jump" => jump(opts),
        "potentials" => potentials(),
        "poisson" => poisson(),
        "binding" => binding(),
        "flat-limit" => flat_limit(opts),
        "identities" => identities(opts),
        other => return Err(Error::Argument(format!("unknown suite '{other}' (known: {})", SUITES.join(", ")))),
    };
    Ok(rep)
}

pub fn run_all(opts: &VerifyOptions) -> Vec<SuiteReport> {
    SUITES.iter().map(|s| run_suite(s, opts).expect("known suite")).collect()
}

// ---------------------------------------------------------------- Fourier

fn suite_s2(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("fourier-s2");
    let mut g = rng(opts, 1);
    for _ in 0..200 {
        let (t, tp): (f64, f64) = (g.gen_range(0.1..3.0), g.gen_range(0.1..3.0));
        let (a, b) = (t.cos() * tp.cos(), t.sin() * tp.sin());
        for n in 0..=10u32 {
            let r = fourier_coeff_s2(n, t, tp).and_then(|c| {
                let q = fourier_coeff_quadrature_ab(2, n, a, b, 1e-12)?;
                Ok((rel(c.value, q.value), 1e-8))
            });
            acc.try_check(|| format!("n={n} theta={t} theta'={tp}"), r);
        }
    }
    acc.finish()
}

// (A, B) for which the elliptic route is well conditioned.
fn regular_ab(a: f64, b: f64) -> bool {
    b >= 1e-3
        && a + b < 1.0
        && a - b > -1.0
        && (1.0 - a) / b <= 4.0
        && elliptic_data(a, b).map(|e| e.k2 <= 0.98).unwrap_or(false)
}

fn suite_s3(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("fourier-s3");
    let mut g = rng(opts, 2);
    let mut found = 0;
    while found < 100 {
        let t: [f64; 4] = std::array::from_fn(|_| g.gen_range(0.1..3.0));
        let (a, b) = ab_s3(t[0], t[1], t[2], t[3]);
        if !regular_ab(a, b) {
            continue;
        }
        found += 1;
        for m in 0..=6u32 {
            let r = fourier_coeff_s3_ab(m, a, b, S3Prefactor::Derived).and_then(|c| {
                let q = fourier_coeff_quadrature_ab(3, m, a, b, 1e-12)?;
                Ok((rel(c.value, q.value), 1e-7))
            });
            acc.try_check(|| format!("m={m} angles={t:?}"), r);
        }
        let r = fourier_coeff_s3_m0(t[0], t[1], t[2], t[3]).and_then(|v| {
            let q = fourier_coeff_quadrature_ab(3, 0, a, b, 1e-12)?;
            Ok((rel(v, q.value), 1e-8))
        });
        acc.try_check(|| format!("m=0 closed form angles={t:?}"), r);
    }
    let mut hopf = 0;
    while hopf < 100 {
        let (v, vp, dp): (f64, f64, f64) = (g.gen_range(0.1..1.47), g.gen_range(0.1..1.47), g.gen_range(-PI..PI));
        let (a, b) = (v.cos() * vp.cos() * dp.cos(), v.sin() * vp.sin());
        if !regular_ab(a, b) {
            continue;
        }
        hopf += 1;
        let r = fourier_coeff_hopf_m0(v, vp, dp).and_then(|h| {
            let q = fourier_coeff_quadrature_ab(3, 0, a, b, 1e-12)?;
            Ok((rel(h, q.value), 1e-8))
        });
        acc.try_check(|| format!("Hopf m=0 ({v}, {vp}, {dp})"), r);
    }
    acc.finish()
}

fn v_oracle(j: usize, a2: f64, k2: f64) -> Result<f64> {
    let f = |t: f64| {
        let s2 = t.sin().powi(2);
        1.0 / ((1.0 - a2 * s2).powi(j as i32) * (1.0 - k2 * s2).sqrt())
    };
    Ok(integrate(f, 0.0, FRAC_PI_2, QuadOptions::tol(0.0, 1e-14))?.value)
}

fn v_sequence_suite(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("v-sequence");
    let mut g = rng(opts, 3);
    let mut found = 0;
    let mut unsigned_worst: f64 = 0.0;
    while found < 10 {
        let (a, b): (f64, f64) = (g.gen_range(-0.9..0.9), g.gen_range(0.05..0.9));
        if !regular_ab(a, b) {
            continue;
        }
        found += 1;
        let Ok(ed) = elliptic_data(a, b) else { continue };
        let v = v_sequence(6, &ed);
        let p = v_sequence_with(6, &ed, VRecurrence::Unsigned);
        for j in 0..=6 {
            let r = v.as_ref().map_err(Clone::clone).and_then(|v| {
                let q = v_oracle(j, ed.alpha2, ed.k2)?;
                if let Ok(p) = &p {
                    unsigned_worst = unsigned_worst.max((p[j] - q).abs() / q.abs());
                }
                Ok(((v[j] - q).abs() / q.abs(), 1e-8))
            });
            acc.try_check(|| format!("j={j} alpha^2={} k^2={}", ed.alpha2, ed.k2), r);
        }
    }
    acc.notes.push(format!("unsigned recurrence (V_(j+1) twice, no sign) worst relative error {unsigned_worst:.3e}"));
    acc.finish()
}

// ---------------------------------------------------------------- Gegenbauer

fn random_point(g: &mut ChaCha8Rng, d: usize, r: f64, theta: f64) -> Result<SpherePoint> {
    let mids = (0..d - 2).map(|_| g.gen_range(0.2..PI - 0.2)).collect();
    SpherePoint::new(r, theta, mids, g.gen_range(-PI..PI))
}

fn gegenbauer(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("gegenbauer");
    let mut g = rng(opts, 4);
    let mut nonmono = 0usize;
    for d in dims(opts, &[3, 4, 5]) {
        let r = 1.0 + (d as f64 - 3.0) * 0.5;
        let mut found = 0;
        while found < 20 {
            let (t, tp): (f64, f64) = (g.gen_range(0.1..3.0), g.gen_range(0.1..3.0));
            if convergence_ratio(t, tp) > 0.75 {
                continue;
            }
            let (Ok(p), Ok(q)) = (random_point(&mut g, d, r, t), random_point(&mut g, d, r, tp)) else { continue };
            let Ok(sep) = geodesic_distance(&p, &q) else { continue };
            if !(0.3..2.8).contains(&sep.theta) {
                continue;
            }
            found += 1;
            let exact = match greens(d, r, &p, &q) {
                Ok(k) => k.value,
                Err(e) => {
                    acc.fail(format!("d={d} greens: {e}"));
                    continue;
                }
            };
            let terms = separation_cos_gamma(&p, &q)
                .and_then(|cg| gegenbauer_terms(d, r, t, tp, cg.clamp(-1.0, 1.0), 60));
            let terms = match terms {
                Ok(v) => v,
                Err(e) => {
                    acc.fail(format!("d={d} terms: {e}"));
                    continue;
                }
            };
            let mut s = 0.0;
            let errs: Vec<f64> = terms
                .iter()
                .map(|x| {
                    s += x;
                    (s - exact).abs()
                })
                .collect();
            acc.check(|| format!("d={d} theta={t} theta'={tp} L=60"), errs[60], 1e-6);
            let floor = 1e-12 * (1.0 + exact.abs());
            let bad: Vec<usize> = (5..60).filter(|&l| errs[l] > floor && errs[l + 1] > errs[l]).collect();
            if let Some(&l) = bad.first() {
                nonmono += 1;
                acc.fail(format!(
                    "d={d} theta={t} theta'={tp}: error rises at L={} ({:.3e} -> {:.3e}), {} rises in L=5..60",
                    l + 1,
                    errs[l],
                    errs[l + 1],
                    bad.len()
                ));
            }
        }
    }
    if nonmono > 0 {
        acc.notes.push(format!("{nonmono} pairs with non-monotone truncation error for L >= 5"));
    }
    acc.finish()
}

fn addition(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("addition");
    let mut g = rng(opts, 5);
    let mut found = 0;
    while found < 20 {
        let t: [f64; 4] = std::array::from_fn(|_| g.gen_range(0.1..3.0));
        let (a, b) = ab_s3(t[0], t[1], t[2], t[3]);
        if convergence_ratio(t[0], t[1]) > 0.6 || !regular_ab(a, b) {
            continue;
        }
        found += 1;
        for m in 0..=4u32 {
            let r = addition_fourier_coeff(m, t[0], t[1], t[2], t[3], 40).and_then(|s| {
                let e = fourier_coeff_s3(m, t[0], t[1], t[2], t[3])?;
                Ok((rel(s.value, e.value), 1e-5))
            });
            acc.try_check(|| format!("m={m} angles={t:?}"), r);
        }
    }
    acc.finish()
}

// 5-point central derivative.
fn d5<F: Fn(f64) -> Result<f64>>(f: F, x: f64, h: f64) -> Result<f64> {
    Ok((-f(x + 2.0 * h)? + 8.0 * f(x + h)? - 8.0 * f(x - h)? + f(x - 2.0 * h)?) / (12.0 * h))
}

// 5-point one-sided derivative; `dir` = +1 forward, -1 backward.
fn d_one_sided<F: Fn(f64) -> Result<f64>>(f: F, x: f64, h: f64, dir: f64) -> Result<f64> {
    let hs = dir * h;
    let c = [-25.0, 48.0, -36.0, 16.0, -3.0];
    let mut s = 0.0;
    for (k, ck) in c.iter().enumerate() {
        s += ck * f(x + k as f64 * hs)?;
    }
    Ok(s / (12.0 * hs))
}

fn wronskian(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("wronskian");
    for d in dims(opts, &[3, 4, 5, 6]) {
        let nu = d as f64 / 2.0 - 1.0;
        for l in 0..=6usize {
            let mu = nu + l as f64;
            let f = |x: f64| ferrers_p(FerrersIndex::new(nu, -mu), x);
            let gfun = |x: f64| {
                if d % 2 == 0 {
                    ferrers_q(FerrersIndex::new(nu, mu), x)
                } else {
                    ferrers_p(FerrersIndex::new(nu, mu), x)
                }
            };
            let expected_num = if d % 2 == 0 {
                if (d / 2 - 1 + l) % 2 == 0 { 1.0 } else { -1.0 }
            } else {
                let sgn = if ((d - 3) / 2 + l) % 2 == 0 { 1.0 } else { -1.0 };
                2.0 * sgn / PI
            };
            for &x in &[-0.7, -0.3, 0.2, 0.5, 0.8] {
                let r = (|| {
                    let w = f(x)? * d5(gfun, x, 1e-3)? - d5(f, x, 1e-3)? * gfun(x)?;
                    let want = expected_num / (1.0 - x * x);
                    Ok(((w - want).abs() / want.abs(), 1e-7))
                })();
                let tag = if d % 2 == 0 { "WPQ" } else { "WPP" };
                acc.try_check(|| format!("{tag} d={d} l={l} x={x}"), r);
            }
        }
    }
    acc.finish()
}

fn jump(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("jump");
    for d in dims(opts, &[3, 4, 5]) {
        for &r in &[1.0, 2.0] {
            for l in 0..=4usize {
                for &tp in &[0.7, 1.3, 2.0] {
                    let v = |t: f64| -> Result<f64> {
                        let u = if t == tp {
                            radial_u_l(d, r, l, tp, tp)?.u_l_value
                        } else {
                            radial_u_l(d, r, l, t, tp)?.u_l_value
                        };
                        Ok((t.sin() * tp.sin()).powf((d as f64 - 1.0) / 2.0) * u)
                    };
                    let want = -r.powi(2 - d as i32);
                    let res = (|| {
                        let j = d_one_sided(v, tp, 1e-3, 1.0)? - d_one_sided(v, tp, 1e-3, -1.0)?;
                        Ok(((j - want).abs() / want.abs(), 1e-5))
                    })();
                    acc.try_check(|| format!("d={d} R={r} l={l} theta'={tp}"), res);
                }
            }
        }
    }
    acc.finish()
}

// ---------------------------------------------------------------- potentials

fn potentials() -> SuiteReport {
    let mut acc = Acc::new("potentials");
    for &(rho0, r, t0) in &[(1.0, 1.0, 0.5), (1.3, 2.0, 1.1), (0.7, 1.5, 2.2)] {
        let cap = UniformCap { rho0, theta0: t0 };
        for k in 0..20 {
            let t = 0.05 + 0.15 * k as f64;
            for d in [2usize, 3] {
                let r_ = (|| {
                    let closed = if d == 2 { potential_2disc(rho0, r, t0, t)? } else { potential_3ball(rho0, r, t0, t)? };
                    let conv = convolve_axisymmetric(d, r, &cap, t)?;
                    Ok(((closed.value - conv).abs() / closed.value.abs().max(1.0), 1e-8))
                })();
                acc.try_check(|| format!("d={d} (rho0, R, theta0)=({rho0}, {r}, {t0}) theta={t}"), r_);
            }
        }
    }
    for &(phi, vt, p1) in &[(0.4, 0.3, 0.1), (0.4, 1.2, -0.5), (1.0, 0.05, 2.5), (2.5, 0.7, 0.0), (0.2, 0.01, 0.5)] {
        let r_ = (|| {
            let p = HopfPoint::new(1.0, vt, p1, 0.3)?;
            let c = potential_curve_segment(1.0, 1.0, phi, &p)?;
            let q = curve_segment_quadrature(1.0, phi, vt, p1)?;
            Ok(((c - q).abs(), 1e-9))
        })();
        acc.try_check(|| format!("curve segment varphi={phi} vartheta={vt} phi1={p1}"), r_);
    }
    acc.finish()
}

fn poisson() -> SuiteReport {
    let mut acc = Acc::new("poisson");
    let h = 1e-3;
    for &(d, rho0, r, t0) in &[(2usize, 1.3, 1.5, 0.9), (2, -0.6, 1.0, 2.0), (3, 1.3, 1.5, 0.9), (3, 0.8, 2.0, 1.8)] {
        let phi = |t: f64| {
            if d == 2 {
                potential_2disc(rho0, r, t0, t).map(|v| v.value).unwrap_or(f64::NAN)
            } else {
                potential_3ball(rho0, r, t0, t).map(|v| v.value).unwrap_or(f64::NAN)
            }
        };
        let n = 8;
        for k in 0..n {
            let ti = 0.05 + (t0 - 0.1) * k as f64 / (n - 1) as f64;
            let res = -radial_laplacian(phi, d, r, ti, h) - rho0;
            acc.check(|| format!("d={d} interior theta={ti}"), res.abs(), 1e-5 * rho0.abs());
            let te = t0 + 0.05 + (PI - 0.3 - t0 - 0.05) * k as f64 / (n - 1) as f64;
            let res = -radial_laplacian(phi, d, r, te, h);
            acc.check(|| format!("d={d} exterior theta={te}"), res.abs(), 1e-5 * rho0.abs());
        }
    }
    acc.finish()
}

fn binding() -> SuiteReport {
    let mut acc = Acc::new("binding");
    let (rho0, r) = (0.9, 1.3);
    for &t0 in &[0.3, 0.8, 1.5] {
        let res = (|| {
            let q = binding_by_quadrature(2, r, &UniformCap { rho0, theta0: t0 })?;
            Ok(((binding_2disc(rho0, r, t0)? - q).abs() / q.abs(), 1e-7))
        })();
        acc.try_check(|| format!("2-disc theta0={t0}"), res);
    }
    for &t0 in &[0.4, 0.7, 1.2] {
        let res = (|| {
            let q = binding_by_quadrature(3, r, &UniformCap { rho0, theta0: t0 })?;
            Ok(((binding_3ball(rho0, r, t0)? - q).abs() / q.abs(), 1e-7))
        })();
        acc.try_check(|| format!("3-ball theta0={t0}"), res);
    }
    let t0: f64 = 0.01;
    match binding_3ball(1.0, 1.0, t0) {
        Ok(e) => {
            let lead = 4.0 * PI / 15.0;
            let norm = e / t0.powi(5);
            acc.check(|| "3-ball normalized energy vs 4 pi / 15".into(), (norm / lead - 1.0).abs(), 1e-2);
            let ratio = (1.0 - norm / lead) / (t0 * t0);
            acc.check(|| format!("3-ball curvature ratio {ratio} vs 13/21"), (ratio / (13.0 / 21.0) - 1.0).abs(), 2e-2);
            acc.notes.push(format!("normalized energy {norm:.10}, curvature ratio {ratio:.6}"));
        }
        Err(e) => acc.fail(format!("3-ball small theta0: {e}")),
    }
    acc.finish()
}

struct Series {
    label: String,
    devs: Vec<f64>,
}

fn flat_limit(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("flat-limit");
    let radii = &opts.radii;
    if radii.len() < 2 {
        acc.fail("flat-limit needs at least two radii".into());
        return acc.finish();
    }
    let mut series: Vec<Series> = Vec::new();
    let mut push = |label: String, f: &dyn Fn(f64) -> Result<f64>| {
        let devs: Result<Vec<f64>> = radii.iter().map(|&r| f(r)).collect();
        match devs {
            Ok(devs) => series.push(Series { label, devs }),
            Err(e) => series.push(Series { label: format!("{label}: {e}"), devs: vec![f64::NAN; radii.len()] }),
        }
    };
    for d in dims(opts, &[2, 3, 4, 5]) {
        let s = if d == 2 { 0.3 } else { 1.3 };
        push(format!("kernel d={d} s={s}"), &|r| {
            let mut g = greens_from_angle(d, r, s / r)?;
            if d == 2 {
                g -= (2.0 * r).ln() / (2.0 * PI);
            }
            let n = newtonian_from_distance(d, s)?;
            Ok(((g - n) / n).abs())
        });
    }
    let (rho0, r0) = (1.0, 0.7);
    for &rr in &[0.4, 1.5] {
        push(format!("2-disc r={rr}"), &|r| {
            let t0 = r0 / r;
            let v = potential_2disc(rho0, r, t0, rr / r)?.value - c_r_2disc(rho0, r, t0);
            let e = potential_2disc_euclidean(rho0, r0, rr).value;
            Ok(((v - e) / e).abs())
        });
        push(format!("3-ball r={rr}"), &|r| {
            let v = potential_3ball(rho0, r, r0 / r, rr / r)?.value;
            let e = potential_3ball_euclidean(rho0, r0, rr).value;
            Ok(((v - e) / e).abs())
        });
    }
    let l = 0.8;
    for &(rr, z) in &[(0.5, 0.3), (0.4, 1.5)] {
        push(format!("curve segment r={rr} z={z}"), &|r| {
            let p = HopfPoint::new(r, rr / r, z / r, 0.0)?;
            let v = potential_curve_segment(rho0, r, l / r, &p)?;
            let e = potential_line_segment_euclidean(rho0, l, rr, z);
            Ok(((v - e) / e).abs())
        });
    }
    // 2-disc binding energy after removing c_R M / 2
    let e_shift = |r: f64| -> Result<f64> {
        let t0 = r0 / r;
        let m = 4.0 * PI * rho0 * r * r * (0.5 * t0).sin().powi(2);
        Ok(binding_2disc(rho0, r, t0)? - 0.5 * c_r_2disc(rho0, r, t0) * m)
    };
    let flat0 = binding_2disc_euclidean(rho0, r0, None);
    push("2-disc binding".into(), &|r| Ok(((e_shift(r)? - flat0) / flat0).abs()));
    for s in &series {
        let slope = loglog_slope(radii, &s.devs);
        acc.check(|| format!("{} slope {slope:.3}", s.label), (slope + 2.0).abs(), 0.2);
        acc.notes.push(format!("{}: slope {slope:.4}, deviations {:?}", s.label, s.devs));
    }
    // the R^-2 correction term removes the leading deviation
    let r = radii[0];
    match e_shift(r) {
        Ok(e) => {
            let lead = (e - flat0).abs();
            let corr = (e - binding_2disc_euclidean(rho0, r0, Some(r))).abs();
            acc.check(|| format!("2-disc binding R^-2 correction at R={r}"), corr / lead, 1e-2);
            acc.notes.push(format!("2-disc binding at R={r}: leading deviation {lead:.3e}, corrected {corr:.3e}"));
        }
        Err(e) => acc.fail(format!("2-disc binding: {e}")),
    }
    acc.finish()
}

fn identities(opts: &VerifyOptions) -> SuiteReport {
    let mut acc = Acc::new("identities");
    let thetas = [0.3, 0.7, 1.2];
    for d in dims(opts, &[2, 3, 4, 5]) {
        for &t in &thetas {
            let r = oscillator_identity(d, t).map(|c| (c.abs_diff() / (1.0 + c.rhs.abs()), 1e-7));
            acc.try_check(|| format!("oscillator integral d={d} theta={t}"), r);
            if d == 4 || d == 5 {
                let r = kepler_identity(d, t).map(|c| (c.abs_diff() / (1.0 + c.rhs.abs()), 1e-7));
                acc.try_check(|| format!("Kepler integral d={d} theta={t}"), r);
            }
        }
        let (r, alpha) = (1.4, 0.8);
        let eps_list: Vec<Option<f64>> = if d == 2 { vec![Some(1e-2), Some(1e-3)] } else { vec![None] };
        for &t in &[0.3, 0.7, 1.2, 2.0, 2.7] {
            let osc = (|| {
                let lap = radial_laplacian(|x| oscillator_pair(d, r, alpha, x).map(|p| p.potential).unwrap_or(f64::NAN), d, r, t, 1e-3);
                let rho = oscillator_pair(d, r, alpha, t)?.density;
                Ok(((-lap - rho).abs(), 1e-5 * rho.abs().max(alpha.abs() / (r * r))))
            })();
            acc.try_check(|| format!("oscillator Poisson d={d} theta={t}"), osc);
            for &eps in &eps_list {
                let kep = (|| {
                    let lap = radial_laplacian(|x| kepler_pair(d, r, alpha, x, eps).map(|p| p.potential).unwrap_or(f64::NAN), d, r, t, 1e-3);
                    let rho = kepler_pair(d, r, alpha, t, eps)?.density;
                    Ok(((-lap - rho).abs(), 1e-5 * rho.abs().max(alpha.abs() / (r * r))))
                })();
                acc.try_check(|| format!("Kepler Poisson d={d} theta={t} eps={eps:?}"), kep);
            }
        }
    }
    acc.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_fit() {
        let r = [1e2, 1e3, 1e4];
        let e: Vec<f64> = r.iter().map(|x: &f64| 3.0 * x.powi(-2)).collect();
        assert!((loglog_slope(&r, &e) + 2.0).abs() < 1e-12);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &VerifyOptions::default()).is_err());
    }

    #[test]
    fn cheap_suites_pass() {
        let o = VerifyOptions::default();
        for s in ["wronskian", "jump", "poisson", "potentials"] {
            let r = run_suite(s, &o).unwrap();
            assert!(r.passed, "{r:#?}");
        }
    }
}

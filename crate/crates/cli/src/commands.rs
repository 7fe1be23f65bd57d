use std::f64::consts::PI;

use sphere_green::fourier::{fourier_coeff_quadrature, fourier_coeff_s2, fourier_coeff_s3, FourierCoefficient};
use sphere_green::fundsol::{greens, greens_from_angle};
use sphere_green::gegenbauer::{gegenbauer_sum, gegenbauer_sum_auto};
use sphere_green::geometry::{geodesic_distance, HopfPoint, SpherePoint};
use sphere_green::potentials::{
    binding_2disc, binding_3ball, binding_by_quadrature, kepler_pair, oscillator_pair, radial_laplacian, DensitySpec,
    UniformCap,
};
use sphere_green::verify::{run_all, run_suite, VerifyOptions, SUITES};
use sphere_green::Error;

use crate::args::*;
use crate::table::{Cell, Table};

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing arguments: exit 2.
    Usage(String),
    /// Evaluation refused by the library: exit 3.
    Eval(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Eval(e)
    }
}

type Out = Result<Table, CliError>;

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing required flag --{flag}")))
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol > 0.0 && tol <= 1e-2 {
        Ok(())
    } else {
        usage(format!("tolerance {tol} must lie in (0, 1e-2]"))
    }
}

// Removes representation noise from a + i * step.
fn tidy(x: f64) -> f64 {
    let y = (x * 1e12).round() / 1e12;
    if (y - x).abs() <= 1e-15 * x.abs().max(1.0) * 10.0 {
        y
    } else {
        x
    }
}

/// `a:b:step` (inclusive of b up to rounding) or a comma list.
pub fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse grid '{s}' (expected a:b:step or a comma list)"));
    if s.contains(':') {
        let p: Vec<f64> = s.split(':').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
        let [a, b, step] = p[..] else { return Err(bad()) };
        if !(step > 0.0) || !(b >= a) {
            return usage(format!("grid '{s}' needs step > 0 and b >= a"));
        }
        let n = ((b - a) / step + 1e-9).floor() as usize + 1;
        if n > 1_000_000 {
            return usage(format!("grid '{s}' has too many points"));
        }
        Ok((0..n).map(|i| tidy(a + i as f64 * step)).collect())
    } else {
        s.split(',').map(|x| x.trim().parse::<f64>().map_err(|_| bad())).collect()
    }
}

fn m_list(m: &MRange) -> Result<Vec<u32>, CliError> {
    match (m.m, m.m_max) {
        (Some(m), None) => Ok(vec![m]),
        (None, Some(mx)) => Ok((0..=mx).collect()),
        (None, None) => Ok(vec![0]),
        (Some(_), Some(_)) => usage("give either --m or --m-max, not both"),
    }
}

fn points(d: usize, r: f64, p: &PairArgs) -> Result<(SpherePoint, SpherePoint), CliError> {
    let t = need(p.theta, "theta")?;
    let tp = need(p.theta_p, "theta-p")?;
    let pad = |v: &Vec<f64>| -> Result<Vec<f64>, CliError> {
        match v.len() {
            0 => Ok(vec![PI / 2.0; d.saturating_sub(2)]),
            n if n + 2 == d => Ok(v.clone()),
            n => usage(format!("S^{d} points need {} intermediate angles, got {n}", d.saturating_sub(2))),
        }
    };
    Ok((SpherePoint::new(r, t, pad(&p.mids)?, p.phi)?, SpherePoint::new(r, tp, pad(&p.mids_p)?, p.phi_p)?))
}

fn coeff_table(coeffs: &[FourierCoefficient]) -> Table {
    let mut t = Table::new(&["m", "value", "method", "est_error"]);
    for c in coeffs {
        t.push(vec![c.m.into(), c.value.into(), c.method.as_str().into(), c.est_error.into()]);
    }
    t
}

pub fn greens_cmd(a: &GreensArgs) -> Out {
    let mut t = Table::new(&["d", "R", "theta_sep", "value", "method", "est_error"]);
    let (sep, value) = match a.theta_sep {
        Some(s) => (s, greens_from_angle(a.d, a.r, s)?),
        None => {
            let (p, q) = points(a.d, a.r, &a.pair)?;
            let k = greens(a.d, a.r, &p, &q)?;
            (k.theta_sep, k.value)
        }
    };
    t.meta("d", a.d).meta("R", a.r);
    t.push(vec![a.d.into(), a.r.into(), sep.into(), value.into(), "closed_form".into(), Cell::Empty]);
    Ok(t)
}

pub fn fourier_s2_cmd(a: &S2Args) -> Out {
    let cs = m_list(&a.m)?
        .into_iter()
        .map(|m| fourier_coeff_s2(m, a.theta, a.theta_p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = coeff_table(&cs);
    t.meta("theta", a.theta).meta("theta_p", a.theta_p);
    Ok(t)
}

pub fn fourier_s3_cmd(a: &S3Args) -> Out {
    let cs = m_list(&a.m)?
        .into_iter()
        .map(|m| fourier_coeff_s3(m, a.theta, a.theta_p, a.theta2, a.theta2_p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = coeff_table(&cs);
    t.meta("theta", a.theta).meta("theta_p", a.theta_p).meta("theta2", a.theta2).meta("theta2_p", a.theta2_p);
    Ok(t)
}

pub fn fourier_quad_cmd(a: &QuadArgs) -> Out {
    check_tol(a.tol)?;
    let (p, q) = points(a.d, 1.0, &a.pair)?;
    let cs = m_list(&a.m)?
        .into_iter()
        .map(|m| fourier_coeff_quadrature(a.d, m, &p, &q, a.tol))
        .collect::<Result<Vec<_>, _>>()?;
    let mut t = coeff_table(&cs);
    t.meta("d", a.d).meta("tol", a.tol);
    Ok(t)
}

pub fn gegenbauer_cmd(a: &GegenbauerArgs) -> Out {
    let (p, q) = points(a.d, a.r, &a.pair)?;
    let (value, l_used) = match a.tol {
        Some(tol) => {
            check_tol(tol)?;
            gegenbauer_sum_auto(a.d, a.r, &p, &q, tol, a.l)?
        }
        None => (gegenbauer_sum(a.d, a.r, &p, &q, a.l)?, a.l),
    };
    let exact = greens(a.d, a.r, &p, &q)?.value;
    let mut t = Table::new(&["d", "R", "L", "theta_sep", "value", "greens", "abs_diff", "method"]);
    let sep = geodesic_distance(&p, &q)?.theta;
    t.meta("d", a.d).meta("R", a.r);
    t.push(vec![
        a.d.into(),
        a.r.into(),
        l_used.into(),
        sep.into(),
        value.into(),
        exact.into(),
        (value - exact).abs().into(),
        "gegenbauer".into(),
    ]);
    Ok(t)
}

fn density_spec(a: &DensityArgs) -> Result<DensitySpec, CliError> {
    if let Some(path) = &a.density_json {
        let s = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        return Ok(DensitySpec::from_json(&s)?);
    }
    let r = a.r;
    let spec = match need(a.density, "density")? {
        DensityKind::Disc2 => DensitySpec::Disc2 { rho0: need(a.rho0, "rho0")?, theta0: need(a.theta0, "theta0")?, r },
        DensityKind::Ball3 => DensitySpec::Ball3 { rho0: need(a.rho0, "rho0")?, theta0: need(a.theta0, "theta0")?, r },
        DensityKind::CurveSegment => {
            DensitySpec::CurveSegment { rho0: need(a.rho0, "rho0")?, varphi: need(a.varphi, "varphi")?, r }
        }
        DensityKind::Oscillator => DensitySpec::Oscillator { alpha: need(a.alpha, "alpha")?, d: need(a.d, "d")?, r },
        DensityKind::Kepler => {
            DensitySpec::Kepler { alpha: need(a.alpha, "alpha")?, d: need(a.d, "d")?, r, epsilon: a.epsilon }
        }
    };
    spec.validate()?;
    Ok(spec)
}

pub fn potential_cmd(a: &PotentialArgs) -> Out {
    let spec = density_spec(&a.density)?;
    let grid = parse_grid(&a.theta_grid)?;
    let mut t;
    if let DensitySpec::CurveSegment { r, .. } = spec {
        t = Table::new(&["vartheta", "phi1", "value", "branch", "method"]);
        for &vt in &grid {
            let p = HopfPoint::new(r, vt, a.phi1, 0.0)?;
            let v = spec.potential_hopf(&p)?;
            t.push(vec![vt.into(), a.phi1.into(), v.into(), "exterior".into(), "closed_form".into()]);
        }
    } else {
        t = Table::new(&["theta", "value", "branch", "method"]);
        let method = if matches!(spec, DensitySpec::TabulatedAxisymmetric { .. }) { "quadrature" } else { "closed_form" };
        for &th in &grid {
            let v = spec.potential(th)?;
            t.push(vec![th.into(), v.value.into(), v.branch.as_str().into(), method.into()]);
        }
    }
    t.meta("density", serde_json::to_string(&spec).expect("serializable"));
    Ok(t)
}

pub fn binding_cmd(a: &BindingArgs) -> Out {
    let mut cols = vec!["theta0", "value", "method"];
    if a.quadrature {
        cols.extend(["quadrature", "abs_diff"]);
    }
    let mut t = Table::new(&cols);
    let d = match a.density {
        CapKind::Disc2 => 2,
        CapKind::Ball3 => 3,
    };
    for t0 in parse_grid(&a.theta0)? {
        let v = if d == 2 { binding_2disc(a.rho0, a.r, t0)? } else { binding_3ball(a.rho0, a.r, t0)? };
        let mut row: Vec<Cell> = vec![t0.into(), v.into(), "closed_form".into()];
        if a.quadrature {
            let q = binding_by_quadrature(d, a.r, &UniformCap { rho0: a.rho0, theta0: t0 })?;
            row.extend([q.into(), (v - q).abs().into()]);
        }
        t.push(row);
    }
    t.meta("density", if d == 2 { "disc2" } else { "ball3" }).meta("rho0", a.rho0).meta("R", a.r);
    Ok(t)
}

pub fn superintegrable_cmd(a: &SuperArgs) -> Out {
    let pair = |th: f64| match a.kind {
        PairKind::Oscillator => oscillator_pair(a.d, a.r, a.alpha, th),
        PairKind::Kepler => kepler_pair(a.d, a.r, a.alpha, th, a.epsilon),
    };
    let mut t = Table::new(&["theta", "potential", "density", "delta_strength", "poisson_residual"]);
    for th in parse_grid(&a.theta_grid)? {
        let p = pair(th)?;
        let h = 1e-3;
        let residual = if th > 2.0 * h && th < PI - 2.0 * h {
            let lap = radial_laplacian(|x| pair(x).map(|q| q.potential).unwrap_or(f64::NAN), a.d, a.r, th, h);
            Some(-lap - p.density).filter(|x| x.is_finite())
        } else {
            None
        };
        t.push(vec![th.into(), p.potential.into(), p.density.into(), p.delta.map(|s| s.strength).into(), residual.into()]);
    }
    let kind = match a.kind {
        PairKind::Oscillator => "oscillator",
        PairKind::Kepler => "kepler",
    };
    t.meta("kind", kind).meta("d", a.d).meta("R", a.r).meta("alpha", a.alpha);
    if let Some(e) = a.epsilon {
        t.meta("epsilon", e);
    }
    Ok(t)
}

/// Returns the report table and whether every suite passed.
pub fn verify_cmd(a: &VerifyArgs) -> Result<(Table, bool), CliError> {
    let mut opts = VerifyOptions { d: a.d, ..VerifyOptions::default() };
    if !a.radii.is_empty() {
        if a.radii.len() < 2 || a.radii.iter().any(|r| !(*r > 0.0)) {
            return usage("--R needs at least two positive radii");
        }
        opts.radii = a.radii.clone();
    }
    if let Some(s) = a.seed {
        opts.seed = s;
    }
    let reports = match &a.suite {
        Some(s) if !SUITES.contains(&s.as_str()) => {
            return usage(format!("unknown suite '{s}' (known: {})", SUITES.join(", ")))
        }
        Some(s) => vec![run_suite(s, &opts)?],
        None => run_all(&opts),
    };
    let mut t = Table::new(&["suite", "passed", "cases", "max_error", "tolerance", "failures"]);
    let mut ok = true;
    for r in &reports {
        ok &= r.passed;
        t.push(vec![
            r.name.as_str().into(),
            (if r.passed { "true" } else { "false" }).into(),
            r.cases.into(),
            r.max_error.into(),
            r.tolerance.into(),
            r.failures.len().into(),
        ]);
        for n in &r.notes {
            t.meta(&format!("note[{}]", r.name), n);
        }
        for f in &r.failures {
            eprintln!("FAIL {}: {f}", r.name);
            t.meta(&format!("fail[{}]", r.name), f);
        }
    }
    if let Some(d) = a.d {
        t.meta("d", d);
    }
    t.meta("R", opts.radii.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","));
    t.meta("seed", opts.seed);
    Ok((t, ok))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = parse_grid("0:3.1:0.1").unwrap();
        assert_eq!(g.len(), 32);
        assert_eq!(g[3], 0.3);
        assert_eq!(g[31], 3.1);
        assert_eq!(parse_grid("0.5, 1").unwrap(), vec![0.5, 1.0]);
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("a,b").is_err());
    }
}

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use super::convolve::{convolve_axisymmetric, Tabulated};
use super::examples::{potential_2disc, potential_3ball, potential_curve_segment};
use super::superintegrable::{kepler_pair, oscillator_pair};
use super::{AxisymmetricProfile, Branch, PotentialValue};
use crate::error::{Error, Result};
use crate::geometry::{unit_sphere_area, HopfPoint};
use crate::quadrature::{integrate_with_breaks, QuadOptions};

/// A delta-function piece of a density: coefficient of delta(theta)/(R^(d-1) sin^(d-1) theta)
/// type sources, kept out of pointwise evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaSource {
    /// Polar angle of the support.
    pub theta: f64,
    pub strength: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value", rename_all = "snake_case")]
pub enum Mass {
    Finite(f64),
    Divergent,
}

/// Density distributions accepted by the potential routines; parses from JSON
/// with a `kind` tag.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DensitySpec {
    Disc2 {
        rho0: f64,
        theta0: f64,
        #[serde(rename = "R")]
        r: f64,
    },
    Ball3 {
        rho0: f64,
        theta0: f64,
        #[serde(rename = "R")]
        r: f64,
    },
    CurveSegment {
        rho0: f64,
        varphi: f64,
        #[serde(rename = "R")]
        r: f64,
    },
    Oscillator {
        alpha: f64,
        d: usize,
        #[serde(rename = "R")]
        r: f64,
    },
    Kepler {
        alpha: f64,
        d: usize,
        #[serde(rename = "R")]
        r: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        epsilon: Option<f64>,
    },
    TabulatedAxisymmetric {
        d: usize,
        #[serde(rename = "R")]
        r: f64,
        theta: Vec<f64>,
        rho: Vec<f64>,
    },
}

fn amp(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v != 0.0 {
        Ok(())
    } else {
        Err(Error::domain(name, v, "amplitude must be finite and non-zero"))
    }
}

fn extent(name: &'static str, v: f64, closed: bool) -> Result<()> {
    let ok = v > 0.0 && (v < PI || (closed && v == PI));
    if ok {
        Ok(())
    } else {
        Err(Error::domain(name, v, "extent angle out of range"))
    }
}

impl DensitySpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(s).map_err(|e| Error::Argument(format!("density spec: {e}")))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.radius();
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain("R", r, "radius must be positive"));
        }
        match self {
            Self::Disc2 { rho0, theta0, .. } | Self::Ball3 { rho0, theta0, .. } => {
                amp("rho0", *rho0)?;
                extent("theta0", *theta0, false)
            }
            Self::CurveSegment { rho0, varphi, .. } => {
                amp("rho0", *rho0)?;
                extent("varphi", *varphi, true)
            }
            Self::Oscillator { alpha, d, .. } => {
                amp("alpha", *alpha)?;
                dim(*d)
            }
            Self::Kepler { alpha, d, epsilon, .. } => {
                amp("alpha", *alpha)?;
                dim(*d)?;
                match (*d, epsilon) {
                    (2, None) => Err(Error::Argument("kepler with d = 2 requires epsilon".into())),
                    (_, Some(e)) if !(*e > 0.0 && *e < FRAC_PI_2) => {
                        Err(Error::domain("epsilon", *e, "regularization angle must lie in (0, pi/2)"))
                    }
                    _ => Ok(()),
                }
            }
            Self::TabulatedAxisymmetric { d, theta, rho, .. } => {
                dim(*d)?;
                Tabulated::new(theta.clone(), rho.clone()).map(|_| ())
            }
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Disc2 { .. } => 2,
            Self::Ball3 { .. } | Self::CurveSegment { .. } => 3,
            Self::Oscillator { d, .. } | Self::Kepler { d, .. } | Self::TabulatedAxisymmetric { d, .. } => *d,
        }
    }

    pub fn radius(&self) -> f64 {
        match self {
            Self::Disc2 { r, .. }
            | Self::Ball3 { r, .. }
            | Self::CurveSegment { r, .. }
            | Self::Oscillator { r, .. }
            | Self::Kepler { r, .. }
            | Self::TabulatedAxisymmetric { r, .. } => *r,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Self::Disc2 { .. } => "disc2",
            Self::Ball3 { .. } => "ball3",
            Self::CurveSegment { .. } => "curve_segment",
            Self::Oscillator { .. } => "oscillator",
            Self::Kepler { .. } => "kepler",
            Self::TabulatedAxisymmetric { .. } => "tabulated_axisymmetric",
        }
    }

    /// Smooth part of the density at polar angle theta (Hopf angle vartheta for the curve).
    pub fn density(&self, theta: f64) -> Result<f64> {
        match self {
            Self::Disc2 { rho0, theta0, .. } | Self::Ball3 { rho0, theta0, .. } => {
                Ok(if theta <= *theta0 { *rho0 } else { 0.0 })
            }
            Self::CurveSegment { .. } => Ok(0.0),
            Self::Oscillator { alpha, d, r } => oscillator_pair(*d, *r, *alpha, theta).map(|p| p.density),
            Self::Kepler { alpha, d, r, epsilon } => kepler_pair(*d, *r, *alpha, theta, *epsilon).map(|p| p.density),
            Self::TabulatedAxisymmetric { theta: t, rho, .. } => Ok(Tabulated::new(t.clone(), rho.clone())?.rho(theta)),
        }
    }

    /// Delta piece of the density, if any.
    pub fn delta_part(&self) -> Option<DeltaSource> {
        match self {
            Self::CurveSegment { rho0, .. } => Some(DeltaSource { theta: 0.0, strength: *rho0 }),
            Self::Kepler { alpha, d, r, epsilon } => kepler_pair(*d, *r, *alpha, FRAC_PI_2, *epsilon).ok().and_then(|p| p.delta),
            _ => None,
        }
    }

    /// Potential at polar angle theta for the axisymmetric kinds.
    pub fn potential(&self, theta: f64) -> Result<PotentialValue> {
        let d = self.dim();
        match self {
            Self::Disc2 { rho0, theta0, r } => potential_2disc(*rho0, *r, *theta0, theta),
            Self::Ball3 { rho0, theta0, r } => potential_3ball(*rho0, *r, *theta0, theta),
            Self::CurveSegment { .. } => Err(Error::Argument("curve segment potential needs a Hopf point".into())),
            Self::Oscillator { alpha, d, r } => {
                let v = oscillator_pair(*d, *r, *alpha, theta)?.potential;
                Ok(PotentialValue { value: v, branch: Branch::Interior, d: *d, r: *r })
            }
            Self::Kepler { alpha, d, r, epsilon } => {
                let v = kepler_pair(*d, *r, *alpha, theta, *epsilon)?.potential;
                Ok(PotentialValue { value: v, branch: Branch::Interior, d: *d, r: *r })
            }
            Self::TabulatedAxisymmetric { r, theta: t, rho, .. } => {
                let tab = Tabulated::new(t.clone(), rho.clone())?;
                let value = convolve_axisymmetric(d, *r, &tab, theta)?;
                let branch = if theta <= tab.support_end() { Branch::Interior } else { Branch::Exterior };
                Ok(PotentialValue { value, branch, d, r: *r })
            }
        }
    }

    pub fn potential_hopf(&self, p: &HopfPoint) -> Result<f64> {
        match self {
            Self::CurveSegment { rho0, varphi, r } => potential_curve_segment(*rho0, *r, *varphi, p),
            _ => Err(Error::Argument(format!("{} is not a curve source", self.kind()))),
        }
    }

    /// Total mass int rho dvol, delta pieces included.
    pub fn total_mass(&self) -> Result<Mass> {
        let omega = unit_sphere_area(self.dim());
        Ok(match self {
            Self::Disc2 { rho0, theta0, r } => Mass::Finite(4.0 * PI * rho0 * r * r * (0.5 * theta0).sin().powi(2)),
            Self::Ball3 { rho0, theta0, r } => {
                Mass::Finite(2.0 * PI * rho0 * r.powi(3) * (theta0 - theta0.sin() * theta0.cos()))
            }
            Self::CurveSegment { rho0, varphi, r } => Mass::Finite(4.0 * PI * rho0 * r * varphi),
            Self::Oscillator { .. } => Mass::Divergent,
            Self::Kepler { d: 2, .. } => Mass::Divergent,
            Self::Kepler { alpha, d: 3, r, .. } => Mass::Finite(-4.0 * PI * r * alpha),
            Self::Kepler { alpha, d, r, .. } => {
                // (3 - d) alpha R^(d-2) omega int cos sin^(d-4), symmetric about pi/2
                let p = *d as i32 - 4;
                let cut = 1e-6;
                let i = integrate_with_breaks(
                    |t| t.cos() * t.sin().powi(p),
                    &[cut, FRAC_PI_2, PI - cut],
                    QuadOptions::tol(1e-15, 1e-13),
                )?;
                Mass::Finite((3.0 - *d as f64) * alpha * r.powi(*d as i32 - 2) * omega * i.value)
            }
            Self::TabulatedAxisymmetric { d, r, theta, rho } => {
                let tab = Tabulated::new(theta.clone(), rho.clone())?;
                let p = *d as i32 - 1;
                let pts = tab.breakpoints();
                let i = integrate_with_breaks(|t| tab.rho(t) * t.sin().powi(p), &pts, QuadOptions::default())?;
                Mass::Finite(omega * r.powi(*d as i32) * i.value)
            }
        })
    }
}

fn dim(d: usize) -> Result<()> {
    if d >= 2 {
        Ok(())
    } else {
        Err(Error::domain("d", d as f64, "dimension must be at least 2"))
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = r#"{"kind":"ball3","rho0":1.0,"theta0":0.5,"R":2.0}"#;
        let spec = DensitySpec::from_json(s).unwrap();
        assert_eq!(spec, DensitySpec::Ball3 { rho0: 1.0, theta0: 0.5, r: 2.0 });
        assert_eq!(serde_json::to_string(&spec).unwrap(), s);
        let k = DensitySpec::from_json(r#"{"kind":"kepler","alpha":1,"d":2,"R":1,"epsilon":0.01}"#).unwrap();
        assert!((k.delta_part().unwrap().strength - 2.0 / 0.01f64.sin()).abs() < 1e-12);
        assert!(DensitySpec::from_json(r#"{"kind":"kepler","alpha":1,"d":2,"R":1}"#).is_err());
        assert!(DensitySpec::from_json(r#"{"kind":"disc2","rho0":0,"theta0":0.5,"R":1}"#).is_err());
        assert!(DensitySpec::from_json(r#"{"kind":"disc2","rho0":1,"theta0":3.5,"R":1}"#).is_err());
        assert!(DensitySpec::from_json(r#"{"kind":"blob"}"#).is_err());
    }

    #[test]
    fn masses() {
        assert_eq!(DensitySpec::Oscillator { alpha: 1.0, d: 3, r: 1.0 }.total_mass().unwrap(), Mass::Divergent);
        for d in [4, 5] {
            match (DensitySpec::Kepler { alpha: 1.0, d, r: 1.3, epsilon: None }).total_mass().unwrap() {
                Mass::Finite(m) => assert!(m.abs() < 1e-9, "{m}"),
                Mass::Divergent => panic!(),
            }
        }
        let tab = DensitySpec::TabulatedAxisymmetric { d: 2, r: 1.0, theta: vec![0.0, 0.5], rho: vec![1.0, 1.0] };
        let disc = DensitySpec::Disc2 { rho0: 1.0, theta0: 0.5, r: 1.0 };
        let (Mass::Finite(a), Mass::Finite(b)) = (tab.total_mass().unwrap(), disc.total_mass().unwrap()) else { panic!() };
        assert!((a - b).abs() < 1e-12);
        let v = tab.potential(1.0).unwrap();
        assert!((v.value - disc.potential(1.0).unwrap().value).abs() < 1e-10);
    }
}

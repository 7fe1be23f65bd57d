//! Newtonian potentials on S_R^d: closed forms for uniform caps and a circular curve
//! segment, binding energies, a generic axisymmetric convolution, and the oscillator and
//! Kepler-Coulomb density-potential pairs.

mod convolve;
mod density;
mod examples;
mod superintegrable;

pub use convolve::{binding_by_quadrature, convolve_axisymmetric, AxisymmetricProfile, FnProfile, Tabulated, UniformCap};
pub use density::{DeltaSource, DensitySpec, Mass};
pub use examples::{
    binding_2disc, binding_2disc_euclidean, binding_3ball, binding_3ball_euclidean, c_r_2disc, curve_segment_quadrature,
    potential_2disc, potential_2disc_euclidean, potential_3ball, potential_3ball_euclidean, potential_curve_segment,
    potential_line_segment_euclidean,
};
pub use superintegrable::{
    kepler_identity, kepler_pair, oscillator_identity, oscillator_pair, IdentityCheck, SuperintegrablePair,
};

use serde::{Deserialize, Serialize};

/// Which closed-form branch produced a potential value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Interior,
    Exterior,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Interior => "interior",
            Branch::Exterior => "exterior",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialValue {
    pub value: f64,
    pub branch: Branch,
    pub d: usize,
    #[serde(rename = "R")]
    pub r: f64,
}

/// Laplace-Beltrami operator on a function of theta alone, by 5-point differences:
/// (f'' + (d - 1) cot(theta) f') / R^2.
pub fn radial_laplacian<F: Fn(f64) -> f64>(f: F, d: usize, r: f64, theta: f64, h: f64) -> f64 {
    let (fm2, fm1, f0, fp1, fp2) = (f(theta - 2.0 * h), f(theta - h), f(theta), f(theta + h), f(theta + 2.0 * h));
    let d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
    let d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h);
    (d2 + (d as f64 - 1.0) * d1 / theta.tan()) / (r * r)
}

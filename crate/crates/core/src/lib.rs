//! Fundamental solutions of Laplace's equation on the d-dimensional hypersphere of
//! radius R, their azimuthal Fourier and Gegenbauer expansions, and Newtonian potentials
//! of a few classic source distributions.
//!
//! Every closed form in the crate has an independent numerical oracle (quadrature or
//! series) next to it; the [`verify`] module bundles those cross-checks into suites.

// NaN must fail domain checks, hence `!(x > 0.0)` style guards.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod config;
pub mod error;
pub mod fourier;
pub mod fundsol;
pub mod geometry;
pub mod gegenbauer;
pub mod potentials;
pub mod quadrature;
pub mod specfun;
pub mod verify;

pub use config::ExpansionConfig;
pub use error::{Error, Result};
pub use fundsol::{greens, j_d, j_d_ferrers, newtonian_euclidean, normalization, KernelValue};
pub use geometry::{ab_general, geodesic_distance, separation_cos_gamma, GeodesicSeparation, HopfPoint, SpherePoint};
pub use fourier::{
    elliptic_data, fourier_coeff_quadrature, fourier_coeff_s2, fourier_coeff_s3, fourier_coeff_s3_m0,
    EllipticData, FourierCoefficient, Method,
};
pub use gegenbauer::{addition_fourier_coeff, gegenbauer_sum, radial_u_l, sph_symmetric_h, RadialPair};
pub use potentials::{Branch, DensitySpec, PotentialValue};

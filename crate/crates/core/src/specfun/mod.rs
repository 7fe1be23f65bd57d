//! Special functions: elliptic integrals, classical polynomials, the Gauss
//! hypergeometric series and Ferrers functions on the cut (-1, 1).

pub mod elliptic;
pub mod ferrers;
pub mod hypergeometric;
pub mod poly;

pub use elliptic::{
    carlson_rc, carlson_rd, carlson_rf, carlson_rj, elliptic_e, elliptic_f, elliptic_k,
    elliptic_pi,
};
pub use ferrers::{
    ferrers_p, ferrers_p_neg_family, ferrers_p_pos_half_family, ferrers_q, ferrers_q_int_family,
    ferrers_q_minus_nu, FerrersIndex,
};
pub use hypergeometric::{gauss_2f1, gauss_2f1_with};
pub use poly::{
    assoc_legendre_p, binomial, chebyshev_t, factorial, gegenbauer_c, legendre_p, pochhammer,
    PolyDegree,
};

/// Gamma function.
pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

/// Natural log of |Gamma(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

pub(crate) fn is_integer(x: f64) -> bool {
    x.is_finite() && (x - x.round()).abs() < 1e-12
}

pub(crate) fn is_half_integer(x: f64) -> bool {
    is_integer(x - 0.5)
}

pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    is_integer(x) && x.round() <= 0.0
}

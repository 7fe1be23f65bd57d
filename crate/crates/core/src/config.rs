use serde::{Deserialize, Serialize};

/// Truncation and guard-band settings for every series in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionConfig {
    /// Hard cap on the number of terms of any series.
    pub max_terms: usize,
    /// Relative size of a term (against the running sum) below which a series stops.
    pub term_tol: f64,
    /// Angles closer than this to a kernel singularity are rejected.
    pub guard_band: f64,
}

impl Default for ExpansionConfig {
    fn default() -> Self {
        Self {
            max_terms: 200_000,
            term_tol: 1e-17,
            guard_band: 1e-8,
        }
    }
}

/// 1 - k^2 below this is treated as the coincidence singularity of the elliptic route.
pub const ELLIPTIC_GUARD: f64 = 1e-12;

//! Numerical tolerances and size limits shared by every stage of the pipeline.
//!
//! Each tolerance is a base value; the `*_for` helpers apply the scale rule
//! used at the call site so the scaling convention lives in one place.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Residual tolerance for `Ax = b`, scaled by `1 + ||b||_inf`.
    pub feas: f64,
    /// Relative threshold below which a pivot is treated as rank-deficient.
    pub rank: f64,
    /// Orthogonality tolerance for the null-space basis.
    pub orth: f64,
    /// A coordinate counts as nonzero when it exceeds `zero * (1 + ||x||_inf)`.
    pub zero: f64,
    /// Two vertices are identified when they agree to `dedup * (1 + scale)`.
    pub dedup: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            feas: 1e-9,
            rank: 1e-10,
            orth: 1e-10,
            zero: 1e-8,
            dedup: 1e-8,
        }
    }
}

impl Tolerances {
    pub fn feas_for(&self, rhs_inf: f64) -> f64 {
        self.feas * (1.0 + rhs_inf)
    }

    pub fn zero_for(&self, x_inf: f64) -> f64 {
        self.zero * (1.0 + x_inf)
    }

    pub fn dedup_for(&self, scale: f64) -> f64 {
        self.dedup * (1.0 + scale)
    }

    pub fn all_positive(&self) -> bool {
        [self.feas, self.rank, self.orth, self.zero, self.dedup]
            .iter()
            .all(|t| t.is_finite() && *t > 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    /// Largest number of unknowns accepted by the polytope machinery.
    pub n_max: usize,
    /// Largest corank accepted by the polytope machinery.
    pub d_max: usize,
    /// Row cap for Fourier-Motzkin elimination.
    pub fm_row_cap: usize,
    /// Cap on search nodes visited by vertex enumeration.
    pub enum_node_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            n_max: 10,
            d_max: 4,
            fm_row_cap: 20_000,
            enum_node_cap: 50_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Settings {
    pub tol: Tolerances,
    pub limits: Limits,
}

//! Exact solvers for `min ||x||_0` and `min ||x||_p^p` subject to `Ax = b`.

mod l0;
mod lp;

pub use l0::{basic_solutions, solve_l0};
pub use lp::{
    lp_objective, lp_radius, recover_sign, solve_lp_corank1, solve_lp_extreme, LpSolution,
    VertexCertificate,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::inf_norm;
use crate::settings::Tolerances;

/// A solution of `Ax = b` with its support.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparseSolution {
    pub x: Vec<f64>,
    pub support: Vec<usize>,
    pub l0: usize,
    /// `||Ax - b||_inf`.
    pub residual: f64,
}

/// Indices of the coordinates that count as nonzero.
pub fn support_of(x: &[f64], tol: &Tolerances) -> Vec<usize> {
    let cut = tol.zero_for(inf_norm(x));
    (0..x.len()).filter(|&i| x[i].abs() > cut).collect()
}

/// Copy of `x` with the coordinates that count as zero set to exactly zero.
pub fn snap_zeros(x: &[f64], tol: &Tolerances) -> Vec<f64> {
    let cut = tol.zero_for(inf_norm(x));
    x.iter()
        .map(|&v| if v.abs() > cut { v } else { 0.0 })
        .collect()
}

pub fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}

//! H-polyhedra, Fourier-Motzkin projection and exhaustive vertex enumeration,
//! plus the modulus-dominance polytope `G(r)` built on top of them.

mod fourier_motzkin;
mod lifted;
mod vertices;

pub use fourier_motzkin::{feasible, fm_eliminate};
pub use lifted::{build_lambda, extreme_points_of_g, g_of_r, omega_of_r};
pub use vertices::{enumerate_vertices, VertexSet};

use std::fmt::Write as _;

use serde::Serialize;

use crate::linalg::dot;

/// Where a row came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowTag {
    /// Coordinate bound.
    Box,
    /// Modulus-dominance row of the lifted system.
    Lambda,
    /// Half of an equality `Ax = b`.
    Equation,
    /// Produced by elimination.
    Derived,
}

/// `<h, x> <= gamma`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfSpace {
    pub h: Vec<f64>,
    pub gamma: f64,
    pub tag: RowTag,
}

impl HalfSpace {
    pub fn new(h: Vec<f64>, gamma: f64, tag: RowTag) -> Self {
        Self { h, gamma, tag }
    }

    pub fn lhs(&self, x: &[f64]) -> f64 {
        dot(&self.h, x)
    }

    /// Absolute tolerance for evaluating this row at `x`, relative to the
    /// magnitudes involved.
    pub fn tol_at(&self, x: &[f64], base: f64) -> f64 {
        let mag: f64 = self.h.iter().zip(x).map(|(a, b)| (a * b).abs()).sum();
        base * (1.0 + self.gamma.abs() + mag)
    }

    pub fn satisfied(&self, x: &[f64], base: f64) -> bool {
        self.lhs(x) <= self.gamma + self.tol_at(x, base)
    }

    pub fn active(&self, x: &[f64], base: f64) -> bool {
        (self.lhs(x) - self.gamma).abs() <= self.tol_at(x, base)
    }

    pub fn is_constant(&self) -> bool {
        self.h.iter().all(|v| *v == 0.0)
    }
}

/// Finite list of half-spaces in `R^dim`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HPolyhedron {
    dim: usize,
    rows: Vec<HalfSpace>,
    empty: bool,
}

impl HPolyhedron {
    pub fn new(dim: usize) -> Self {
        assert!(dim >= 1, "polyhedron dimension must be positive");
        Self {
            dim,
            rows: Vec::new(),
            empty: false,
        }
    }

    pub fn from_rows(dim: usize, rows: impl IntoIterator<Item = HalfSpace>) -> Self {
        let mut p = Self::new(dim);
        for r in rows {
            p.push(r);
        }
        p
    }

    /// Appends a row. A constant row `0 <= gamma` with `gamma < 0` marks the
    /// polyhedron empty.
    pub fn push(&mut self, row: HalfSpace) {
        assert_eq!(row.h.len(), self.dim, "row length must match dimension");
        assert!(
            row.gamma.is_finite() && row.h.iter().all(|v| v.is_finite()),
            "rows must be finite"
        );
        if row.is_constant() && row.gamma < 0.0 {
            self.empty = true;
        }
        self.rows.push(row);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[HalfSpace] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// True when a contradictory constant row is present.
    pub fn certified_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, x: &[f64], base_tol: f64) -> bool {
        !self.empty && self.rows.iter().all(|r| r.satisfied(x, base_tol))
    }

    pub fn active_rows(&self, x: &[f64], base_tol: f64) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.active(x, base_tol))
            .map(|(i, _)| i)
            .collect()
    }

    /// Fixes the variables listed in `values` (index, value) and returns the
    /// polyhedron over the remaining variables, in their original order.
    pub fn fix_variables(&self, values: &[(usize, f64)]) -> HPolyhedron {
        let fixed: Vec<usize> = values.iter().map(|(i, _)| *i).collect();
        let keep: Vec<usize> = (0..self.dim).filter(|j| !fixed.contains(j)).collect();
        let mut out = HPolyhedron::new(keep.len().max(1));
        for r in &self.rows {
            let shift: f64 = values.iter().map(|(i, v)| r.h[*i] * v).sum();
            let mut h: Vec<f64> = keep.iter().map(|&j| r.h[j]).collect();
            if h.is_empty() {
                h.push(0.0);
            }
            out.push(HalfSpace::new(h, r.gamma - shift, r.tag));
        }
        out
    }

    /// One row per line, `h_1 ... h_q <= gamma`, 17 significant digits.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            for v in &r.h {
                let _ = write!(out, "{} ", crate::report::fmt17(*v));
            }
            let _ = writeln!(out, "<= {}", crate::report::fmt17(r.gamma));
        }
        out
    }
}

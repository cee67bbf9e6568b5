//! `sum |x_i(t)|^p` along the solution line of a corank-one system.
//!
//! The line is parameterised by its first coordinate that actually moves, so
//! `t` is the value of `x_k` for that `k`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::fmt17;
use crate::settings::Settings;
use crate::solvers::{check_exponent, lp_objective, snap_zeros};
use crate::system::SolutionParam;

const MOVING: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowKind {
    Sample,
    Breakpoint,
}

impl RowKind {
    fn as_str(self) -> &'static str {
        match self {
            RowKind::Sample => "sample",
            RowKind::Breakpoint => "breakpoint",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub t: f64,
    /// One objective value per exponent.
    pub values: Vec<f64>,
    pub kind: RowKind,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Curve {
    /// Coordinate used as the line parameter.
    pub coordinate: usize,
    pub p_list: Vec<f64>,
    pub rows: Vec<CurveRow>,
}

/// The solution line as `x(t) = base + t * dir`, with `x_k(t) = t`.
#[derive(Debug, Clone)]
pub struct Line {
    pub coordinate: usize,
    base: Vec<f64>,
    dir: Vec<f64>,
}

impl Line {
    pub fn new(param: &SolutionParam) -> Result<Self> {
        if param.corank() != 1 {
            return Err(Error::CorankMismatch(param.corank()));
        }
        let null = param.null_basis().column(0);
        let x_ls = param.x_ls();
        let k = (0..param.n())
            .find(|&i| null[i].abs() > MOVING)
            .ok_or_else(|| Error::NumericalRankFailure("null direction is zero".into()))?;
        // x = x_ls + c N with c = (t - x_ls[k]) / N[k].
        let dir: Vec<f64> = null.iter().map(|v| v / null[k]).collect();
        let base: Vec<f64> = (0..param.n()).map(|i| x_ls[i] - x_ls[k] * dir[i]).collect();
        Ok(Self {
            coordinate: k,
            base,
            dir,
        })
    }

    pub fn point(&self, t: f64) -> Vec<f64> {
        let mut x: Vec<f64> = self
            .base
            .iter()
            .zip(&self.dir)
            .map(|(b, d)| b + t * d)
            .collect();
        x[self.coordinate] = t;
        x
    }

    /// Parameter values where some coordinate vanishes, ascending.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut ts: Vec<f64> = (0..self.dir.len())
            .filter(|&i| self.dir[i].abs() > MOVING)
            .map(|i| {
                if i == self.coordinate {
                    0.0
                } else {
                    -self.base[i] / self.dir[i]
                }
            })
            .collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
        ts
    }
}

/// Samples `steps + 1` evenly spaced parameter values in `[t_min, t_max]`,
/// then appends the breakpoints inside that range as marked rows.
pub fn sample_curve(
    param: &SolutionParam,
    p_list: &[f64],
    t_min: f64,
    t_max: f64,
    steps: usize,
    settings: &Settings,
) -> Result<Curve> {
    if p_list.is_empty() {
        return Err(Error::InvalidShape("empty exponent list".into()));
    }
    for &p in p_list {
        check_exponent(p)?;
    }
    if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) || steps < 2 {
        return Err(Error::InvalidShape(format!(
            "bad curve range {t_min}:{t_max}:{steps}"
        )));
    }
    let line = Line::new(param)?;
    let eval = |t: f64, kind: RowKind| {
        let x = snap_zeros(&line.point(t), &settings.tol);
        CurveRow {
            t,
            values: p_list.iter().map(|&p| lp_objective(&x, p)).collect(),
            kind,
        }
    };
    let width = t_max - t_min;
    let mut rows: Vec<CurveRow> = (0..=steps)
        .map(|j| t_min + width * j as f64 / steps as f64)
        .map(|t| eval(t, RowKind::Sample))
        .collect();
    rows.extend(
        line.breakpoints()
            .into_iter()
            // Rounding may push an endpoint breakpoint just outside the range.
            .filter(|t| {
                let slack = 1e-12 * (1.0 + t.abs());
                *t >= t_min - slack && *t <= t_max + slack
            })
            .map(|t| eval(t, RowKind::Breakpoint)),
    );
    Ok(Curve {
        coordinate: line.coordinate,
        p_list: p_list.to_vec(),
        rows,
    })
}

impl Curve {
    /// Header `t,f_<p>...,kind`, then one line per row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for p in &self.p_list {
            write!(out, ",f_{p}").unwrap();
        }
        out.push_str(",kind\n");
        for row in &self.rows {
            out.push_str(&fmt17(row.t));
            for v in &row.values {
                out.push(',');
                out.push_str(&fmt17(*v));
            }
            writeln!(out, ",{}", row.kind.as_str()).unwrap();
        }
        out
    }

    /// Parameter value of the smallest entry in column `j`; the first row wins
    /// ties.
    pub fn argmin(&self, j: usize) -> Option<f64> {
        self.rows
            .iter()
            .min_by(|a, b| a.values[j].total_cmp(&b.values[j]))
            .map(|r| r.t)
    }
}

//! Validation and row reduction of `Ax = b`, the least-norm solution, and the
//! affine parameterisation `x = x_ls + N c` of the solution set.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{inf_norm, least_squares, OrthoBasis};
use crate::settings::Settings;

/// A full-row-rank underdetermined system with nonzero right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    a: DMatrix<f64>,
    b: DVector<f64>,
    pub name: Option<String>,
    /// Row count of the system before reduction.
    pub original_rows: usize,
    /// Indices of the original rows kept by the reduction, ascending.
    pub kept_rows: Vec<usize>,
}

impl Instance {
    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    /// Number of independent equations.
    pub fn m(&self) -> usize {
        self.a.nrows()
    }

    /// Number of unknowns.
    pub fn n(&self) -> usize {
        self.a.ncols()
    }

    pub fn corank(&self) -> usize {
        self.n() - self.m()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Residual tolerance for this system's right-hand side.
    pub fn feas_tol(&self, settings: &Settings) -> f64 {
        settings.tol.feas_for(self.b.amax())
    }

    pub fn residual(&self, x: &DVector<f64>) -> f64 {
        (&self.a * x - &self.b).amax()
    }
}

/// Row-reduces `raw_matrix x = raw_rhs` to an equivalent full-row-rank system.
///
/// Rows are scaled to unit length and chosen greedily by largest residual
/// against the rows already kept (pivoted Gram-Schmidt); ties go to the lower
/// index and the kept rows retain their original order.
pub fn load_and_reduce(
    raw_matrix: &DMatrix<f64>,
    raw_rhs: &DVector<f64>,
    settings: &Settings,
) -> Result<Instance> {
    let (m0, n) = raw_matrix.shape();
    if m0 < 1 || n < 2 {
        return Err(Error::InvalidShape(format!(
            "need at least 1 row and 2 columns, got {m0} x {n}"
        )));
    }
    if raw_rhs.len() != m0 {
        return Err(Error::DimensionMismatch {
            expected: m0,
            got: raw_rhs.len(),
        });
    }
    if raw_matrix
        .iter()
        .chain(raw_rhs.iter())
        .any(|v| !v.is_finite())
    {
        return Err(Error::InvalidShape("non-finite entry".into()));
    }

    let unit_rows: Vec<Option<Vec<f64>>> = (0..m0)
        .map(|i| {
            let row: Vec<f64> = raw_matrix.row(i).iter().copied().collect();
            let nrm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            (nrm > 0.0).then(|| row.iter().map(|v| v / nrm).collect())
        })
        .collect();

    let mut basis = OrthoBasis::new(n);
    let mut kept = Vec::new();
    let mut remaining: Vec<usize> = (0..m0).filter(|&i| unit_rows[i].is_some()).collect();
    while basis.len() < n && !remaining.is_empty() {
        let mut best: Option<(usize, f64)> = None;
        for (pos, &i) in remaining.iter().enumerate() {
            let r = basis.residual(unit_rows[i].as_ref().unwrap());
            let rn = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            if best.is_none_or(|(_, b)| rn > b) {
                best = Some((pos, rn));
            }
        }
        let (pos, rn) = best.unwrap();
        if rn <= settings.tol.rank {
            break;
        }
        let i = remaining.remove(pos);
        basis.try_push(unit_rows[i].as_ref().unwrap(), settings.tol.rank * 0.5);
        kept.push(i);
    }
    kept.sort_unstable();

    let m = kept.len();
    let a = DMatrix::from_fn(m, n, |r, c| raw_matrix[(kept[r], c)]);
    let b = DVector::from_fn(m, |r, _| raw_rhs[kept[r]]);

    // Dropped rows must be satisfied by every solution of the kept ones; the
    // least-norm solution is a sufficient witness since the dropped rows lie in
    // the span of the kept rows.
    let (x, _) = least_squares(&a, &b);
    let b_inf = raw_rhs.amax();
    for i in (0..m0).filter(|i| !kept.contains(i)) {
        let row = raw_matrix.row(i);
        let lhs: f64 = row.iter().zip(x.iter()).map(|(p, q)| p * q).sum();
        let scale: f64 = row.iter().zip(x.iter()).map(|(p, q)| (p * q).abs()).sum();
        let residual = (lhs - raw_rhs[i]).abs();
        if residual > settings.tol.feas_for(b_inf.max(scale)) {
            return Err(Error::InconsistentSystem { row: i, residual });
        }
    }
    if m == 0 || b.iter().all(|v| *v == 0.0) {
        return Err(Error::ZeroRhs);
    }
    if m >= n {
        return Err(Error::NotUnderdetermined { rank: m, cols: n });
    }

    Ok(Instance {
        a,
        b,
        name: None,
        original_rows: m0,
        kept_rows: kept,
    })
}

/// Least-norm solution plus an orthonormal basis of `N(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionParam {
    a: DMatrix<f64>,
    b: DVector<f64>,
    x_ls: DVector<f64>,
    null: DMatrix<f64>,
    feas_tol: f64,
}

impl SolutionParam {
    pub fn a(&self) -> &DMatrix<f64> {
        &self.a
    }

    pub fn b(&self) -> &DVector<f64> {
        &self.b
    }

    pub fn x_ls(&self) -> &DVector<f64> {
        &self.x_ls
    }

    /// `n x d` matrix whose orthonormal columns span `N(A)`.
    pub fn null_basis(&self) -> &DMatrix<f64> {
        &self.null
    }

    pub fn n(&self) -> usize {
        self.x_ls.len()
    }

    pub fn corank(&self) -> usize {
        self.null.ncols()
    }

    /// Residual tolerance for `Ax = b` fixed at decomposition time.
    pub fn feas_tol(&self) -> f64 {
        self.feas_tol
    }

    pub fn residual(&self, x: &DVector<f64>) -> f64 {
        (&self.a * x - &self.b).amax()
    }

    /// `x_ls + N c`.
    pub fn solution_at(&self, c: &[f64]) -> Result<DVector<f64>> {
        if c.len() != self.corank() {
            return Err(Error::DimensionMismatch {
                expected: self.corank(),
                got: c.len(),
            });
        }
        Ok(&self.x_ls + &self.null * DVector::from_column_slice(c))
    }

    /// Null-space coordinates `N^T (x - x_ls)`.
    pub fn coordinates_of(&self, x: &DVector<f64>) -> Result<Vec<f64>> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        Ok((self.null.transpose() * (x - &self.x_ls))
            .as_slice()
            .to_vec())
    }
}

/// Splits the solution set into `x_ls` (in the row space of `A`) and an
/// orthonormal null-space basis.
pub fn decompose(inst: &Instance, settings: &Settings) -> Result<SolutionParam> {
    let (m, n) = inst.a.shape();
    let d = n - m;
    let tol = &settings.tol;

    let mut basis = OrthoBasis::new(n);
    for i in 0..m {
        let row: Vec<f64> = inst.a.row(i).iter().copied().collect();
        if !basis.try_push(&row, tol.rank) {
            return Err(Error::NumericalRankFailure(format!(
                "row {i} is dependent on the preceding rows"
            )));
        }
    }
    // Complete the row-space basis with pivoted unit vectors.
    let mut null_cols: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut avail: Vec<usize> = (0..n).collect();
    while null_cols.len() < d {
        let mut best: Option<(usize, Vec<f64>, f64)> = None;
        for (pos, &j) in avail.iter().enumerate() {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let r = basis.residual(&e);
            let rn = r.iter().map(|v| v * v).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(_, _, b)| rn > *b) {
                best = Some((pos, r, rn));
            }
        }
        let (pos, r, rn) = best.ok_or_else(|| {
            Error::NumericalRankFailure("could not complete the null-space basis".into())
        })?;
        avail.remove(pos);
        if rn <= tol.rank {
            return Err(Error::NumericalRankFailure(
                "null-space completion degenerated".into(),
            ));
        }
        let mut col: Vec<f64> = r.iter().map(|v| v / rn).collect();
        let lead = col
            .iter()
            .copied()
            .fold(0.0_f64, |a, v| if v.abs() > a.abs() { v } else { a });
        if lead < 0.0 {
            col.iter_mut().for_each(|v| *v = -*v);
        }
        basis.try_push(&col, tol.rank);
        null_cols.push(col);
    }
    let null = DMatrix::from_fn(n, d, |i, j| null_cols[j][i]);

    let (x0, _) = least_squares(&inst.a, &inst.b);
    let x_ls = &x0 - &null * (null.transpose() * &x0);

    let feas_tol = inst.feas_tol(settings);
    let residual = inst.residual(&x_ls);
    if residual > feas_tol {
        return Err(Error::NumericalRankFailure(format!(
            "least-norm residual {residual:e} exceeds {feas_tol:e}"
        )));
    }
    if d > 0 {
        let an = (&inst.a * &null).amax();
        if an > feas_tol {
            return Err(Error::NumericalRankFailure(format!(
                "||A N|| = {an:e} exceeds {feas_tol:e}"
            )));
        }
        let gram = null.transpose() * &null - DMatrix::identity(d, d);
        if gram.amax() > tol.orth {
            return Err(Error::NumericalRankFailure(
                "null-space basis is not orthonormal".into(),
            ));
        }
        let cross = (null.transpose() * &x_ls).amax();
        if cross > tol.orth * (1.0 + inf_norm(x_ls.as_slice())) {
            return Err(Error::NumericalRankFailure(
                "least-norm solution is not orthogonal to N(A)".into(),
            ));
        }
    }

    Ok(SolutionParam {
        a: inst.a.clone(),
        b: inst.b.clone(),
        x_ls,
        null,
        feas_tol,
    })
}

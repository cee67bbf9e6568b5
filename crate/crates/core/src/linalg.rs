//! Small dense helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector};

pub fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm2(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Incrementally built orthonormal basis (Gram-Schmidt with one
/// re-orthogonalisation pass).
#[derive(Debug, Clone, Default)]
pub struct OrthoBasis {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl OrthoBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            vectors: Vec::with_capacity(dim),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Component of `v` orthogonal to the span of the basis.
    pub fn residual(&self, v: &[f64]) -> Vec<f64> {
        let mut r = v.to_vec();
        for _ in 0..2 {
            for q in &self.vectors {
                let c = dot(&r, q);
                for (ri, qi) in r.iter_mut().zip(q) {
                    *ri -= c * qi;
                }
            }
        }
        r
    }

    /// Adds `v` if its residual relative to `||v||` exceeds `rel_tol`.
    pub fn try_push(&mut self, v: &[f64], rel_tol: f64) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let scale = norm2(v);
        if scale == 0.0 || self.vectors.len() == self.dim {
            return false;
        }
        let r = self.residual(v);
        let rn = norm2(&r);
        if rn <= rel_tol * scale {
            return false;
        }
        self.vectors.push(r.into_iter().map(|x| x / rn).collect());
        true
    }

    pub fn pop(&mut self) {
        self.vectors.pop();
    }
}

/// Solves a square system given as rows; `None` when numerically singular.
pub fn solve_rows(rows: &[&[f64]], rhs: &[f64]) -> Option<Vec<f64>> {
    let q = rows.len();
    let m = DMatrix::from_fn(q, q, |i, j| rows[i][j]);
    let lu = m.full_piv_lu();
    if !lu.is_invertible() {
        return None;
    }
    let x = lu.solve(&DVector::from_column_slice(rhs))?;
    x.iter()
        .all(|v| v.is_finite())
        .then(|| x.as_slice().to_vec())
}

/// Numerical rank of a set of row vectors, using the same relative test as
/// [`OrthoBasis::try_push`].
pub fn row_rank<'a, I>(dim: usize, rows: I, rel_tol: f64) -> usize
where
    I: IntoIterator<Item = &'a [f64]>,
{
    let mut basis = OrthoBasis::new(dim);
    for r in rows {
        basis.try_push(r, rel_tol);
        if basis.len() == dim {
            break;
        }
    }
    basis.len()
}

/// Minimum-norm least-squares solution of `m x = rhs` and its residual
/// infinity norm.
pub fn least_squares(m: &DMatrix<f64>, rhs: &DVector<f64>) -> (DVector<f64>, f64) {
    let svd = m.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let eps = smax * 1e-12 * (m.nrows().max(m.ncols()) as f64);
    let x = svd
        .solve(rhs, eps)
        .unwrap_or_else(|_| DVector::zeros(m.ncols()));
    let res = (m * &x - rhs).amax();
    (x, res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ortho_basis_rejects_dependent_vectors() {
        let mut b = OrthoBasis::new(3);
        assert!(b.try_push(&[1.0, 1.0, 0.0], 1e-10));
        assert!(!b.try_push(&[2.0, 2.0, 0.0], 1e-10));
        assert!(b.try_push(&[0.0, 1.0, 0.0], 1e-10));
        assert_eq!(b.len(), 2);
        let q = b.vectors();
        assert!(dot(&q[0], &q[1]).abs() < 1e-15);
    }

    #[test]
    fn solve_rows_detects_singular() {
        let r1 = [1.0, 2.0];
        let r2 = [2.0, 4.0];
        assert!(solve_rows(&[&r1, &r2], &[1.0, 2.0]).is_none());
        let r3 = [0.0, 1.0];
        let x = solve_rows(&[&r1, &r3], &[5.0, 2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn least_squares_consistent_system() {
        let m = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
        let b = DVector::from_vec(vec![1.0, 2.0]);
        let (x, res) = least_squares(&m, &b);
        assert!(res < 1e-14);
        assert!((x[0] - 1.0).abs() < 1e-14 && (x[1] - 2.0).abs() < 1e-14 && x[2].abs() < 1e-14);
    }
}

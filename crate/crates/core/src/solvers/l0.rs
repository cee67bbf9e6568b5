use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use super::{support_of, SparseSolution};
use crate::linalg::least_squares;
use crate::settings::Settings;
use crate::system::Instance;

fn solve_on_support(inst: &Instance, cols: &[usize]) -> (DVector<f64>, f64) {
    let a = inst.a();
    let sub = DMatrix::from_fn(a.nrows(), cols.len(), |i, j| a[(i, cols[j])]);
    let (y, _) = least_squares(&sub, inst.b());
    let mut x = DVector::zeros(inst.n());
    for (j, &c) in cols.iter().enumerate() {
        x[c] = y[j];
    }
    let res = inst.residual(&x);
    (x, res)
}

/// Every sparsest solution, found by testing supports of increasing size in
/// lexicographic order and stopping at the first size with a feasible one.
pub fn solve_l0(inst: &Instance, settings: &Settings) -> Vec<SparseSolution> {
    let n = inst.n();
    let tol = inst.feas_tol(settings);
    for k in 1..=inst.m() {
        let found: Vec<SparseSolution> = (0..n)
            .combinations(k)
            .filter_map(|cols| {
                let (x, residual) = solve_on_support(inst, &cols);
                (residual <= tol).then(|| {
                    let x = x.as_slice().to_vec();
                    let support = support_of(&x, &settings.tol);
                    SparseSolution {
                        l0: support.len(),
                        support,
                        x,
                        residual,
                    }
                })
            })
            .collect();
        if !found.is_empty() {
            return found;
        }
    }
    // A full-row-rank system always has a basic solution with m columns.
    unreachable!("full-row-rank system without a basic solution")
}

/// Solutions supported on `m` linearly independent columns. Their moduli are
/// the vertices of the unbounded modulus-dominance polyhedron.
pub fn basic_solutions(inst: &Instance, settings: &Settings) -> Vec<SparseSolution> {
    let m = inst.m();
    let a = inst.a();
    let tol = inst.feas_tol(settings);
    (0..inst.n())
        .combinations(m)
        .filter(|cols| {
            let sub = DMatrix::from_fn(m, m, |i, j| a[(i, cols[j])]);
            let svd = sub.svd(false, false);
            let smax = svd.singular_values.max();
            smax > 0.0 && svd.singular_values.min() > settings.tol.rank * smax
        })
        .filter_map(|cols| {
            let (x, residual) = solve_on_support(inst, &cols);
            (residual <= tol).then(|| {
                let x = x.as_slice().to_vec();
                let support = support_of(&x, &settings.tol);
                SparseSolution {
                    l0: support.len(),
                    support,
                    x,
                    residual,
                }
            })
        })
        .collect()
}

//! Reference systems used by tests, the CLI self-checks and the README.

use nalgebra::{DMatrix, DVector};

use crate::settings::Settings;
use crate::system::{load_and_reduce, Instance};

/// 3 x 4 system with a unique 2-sparse solution `(1.45, 2, 0, 0)` whose
/// `l_0.8` minimizer `(0.1, 0, 3, 0.4)` is 3-sparse.
pub fn example1() -> Instance {
    let a = DMatrix::from_row_slice(
        3,
        4,
        &[
            -20.0 / 29.0,
            1.0,
            31.0 / 87.0,
            0.0,
            0.0,
            1.0,
            8.0 / 15.0,
            1.0,
            60.0 / 29.0,
            0.0,
            463.0 / 435.0,
            -1.0,
        ],
    );
    let b = DVector::from_vec(vec![1.0, 2.0, 3.0]);
    load_and_reduce(&a, &b, &Settings::default())
        .expect("reference system is valid")
        .with_name("example1")
}

/// Hand parameterisation of the solution line of [`example1`] by `x_1 = t`.
pub fn example1_point(t: f64) -> DVector<f64> {
    let s = 1.0 - 20.0 / 29.0 * t;
    DVector::from_vec(vec![
        t,
        -4.0 / 27.0 + 40.0 / 27.0 * t,
        29.0 / 9.0 * s,
        58.0 / 135.0 * s,
    ])
}

/// `x_1 + x_2 = 1`.
pub fn single_row() -> Instance {
    load_and_reduce(
        &DMatrix::from_row_slice(1, 2, &[1.0, 1.0]),
        &DVector::from_vec(vec![1.0]),
        &Settings::default(),
    )
    .expect("reference system is valid")
    .with_name("single_row")
}

/// Coordinate equations `x_1 = b_1`, `x_2 = b_2` in three unknowns.
pub fn coordinate(b1: f64, b2: f64) -> Instance {
    load_and_reduce(
        &DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]),
        &DVector::from_vec(vec![b1, b2]),
        &Settings::default(),
    )
    .expect("reference system is valid")
    .with_name("coordinate")
}

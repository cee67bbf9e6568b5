#![allow(dead_code)]

use lpequiv_core::{load_and_reduce, Instance, Settings};
use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::Rng;

/// `k / q` with `k` in `-4..=4` and `q` in `{1, 2, 3}`.
pub fn small_rational<R: Rng>(rng: &mut R) -> f64 {
    let k = rng.gen_range(-4i32..=4) as f64;
    let q = *[1.0, 2.0, 3.0].choose(rng).unwrap();
    k / q
}

fn nonzero_rational<R: Rng>(rng: &mut R) -> f64 {
    loop {
        let v = small_rational(rng);
        if v != 0.0 {
            return v;
        }
    }
}

/// Full-row-rank `m x n` instance with small rational entries. With
/// `sparse_rhs` the right-hand side is `A x` for a random `x` with at most `m`
/// nonzeros, otherwise its entries are drawn directly.
pub fn random_instance<R: Rng>(rng: &mut R, m: usize, n: usize, sparse_rhs: bool) -> Instance {
    loop {
        let a = DMatrix::from_fn(m, n, |_, _| small_rational(rng));
        let b = if sparse_rhs {
            let k = rng.gen_range(1..=m);
            let mut cols: Vec<usize> = (0..n).collect();
            cols.shuffle(rng);
            let mut x = DVector::zeros(n);
            for &c in &cols[..k] {
                x[c] = nonzero_rational(rng);
            }
            &a * x
        } else {
            DVector::from_fn(m, |_, _| small_rational(rng))
        };
        if let Ok(inst) = load_and_reduce(&a, &b, &Settings::default()) {
            if inst.m() == m {
                return inst;
            }
        }
    }
}

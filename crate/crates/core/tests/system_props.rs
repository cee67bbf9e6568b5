mod common;

use lpequiv_core::{decompose, load_and_reduce, Settings};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_three_by_five_residuals() {
    let s = Settings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let inst = common::random_instance(&mut rng, 3, 5, false);
        let p = decompose(&inst, &s).unwrap();
        let tol = inst.feas_tol(&s);
        assert!(inst.residual(p.x_ls()) <= tol);
        assert!((inst.a() * p.null_basis()).amax() <= tol);
        let gram = p.null_basis().transpose() * p.null_basis();
        assert!((gram - DMatrix::identity(2, 2)).amax() <= 1e-10);
        assert!((p.null_basis().transpose() * p.x_ls()).amax() <= 1e-10 * (1.0 + p.x_ls().amax()));
    }
}

#[test]
fn coordinates_round_trip() {
    let s = Settings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let inst = common::random_instance(&mut rng, 2, 5, true);
        let p = decompose(&inst, &s).unwrap();
        let c: Vec<f64> = (0..p.corank()).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let x = p.solution_at(&c).unwrap();
        let back = p.solution_at(&p.coordinates_of(&x).unwrap()).unwrap();
        assert!((back - &x).amax() <= 1e-9 * (1.0 + x.amax()));
    }
}

#[test]
fn orthogonal_decomposition() {
    let s = Settings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let inst = common::random_instance(&mut rng, 3, 5, false);
        let p = decompose(&inst, &s).unwrap();
        let h = DVector::from_fn(5, |_, _| rng.gen_range(-3.0..3.0));
        let n = p.null_basis();
        let rest = &h - n * (n.transpose() * &h);
        // `rest` must be in the range of A^T: solve A^T y = rest in the least
        // squares sense and check the fit.
        let at = inst.a().transpose();
        let y = at.clone().svd(true, true).solve(&rest, 1e-12).unwrap();
        assert!((at * y - rest).amax() <= 1e-9);
    }
}

#[test]
fn reduction_preserves_solutions() {
    let s = Settings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..20 {
        let base = common::random_instance(&mut rng, 2, 4, false);
        // Stack the rows with a combination of them.
        let mix = rng.gen_range(-2.0..2.0);
        let a0 = base.a();
        let b0 = base.b();
        let mut a = DMatrix::zeros(3, 4);
        let mut b = DVector::zeros(3);
        a.rows_mut(0, 2).copy_from(a0);
        b.rows_mut(0, 2).copy_from(b0);
        a.set_row(2, &(a0.row(0) + a0.row(1) * mix));
        b[2] = b0[0] + b0[1] * mix;
        let inst = load_and_reduce(&a, &b, &s).unwrap();
        assert_eq!(inst.m(), 2);
        let p = decompose(&inst, &s).unwrap();
        for _ in 0..5 {
            let c: Vec<f64> = (0..2).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let x = p.solution_at(&c).unwrap();
            assert!((&a * &x - &b).amax() <= s.tol.feas_for(b.amax()) * (1.0 + x.amax()));
        }
    }
}

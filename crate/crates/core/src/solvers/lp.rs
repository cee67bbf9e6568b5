use nalgebra::DVector;
use serde::Serialize;

use super::{basic_solutions, check_exponent, snap_zeros, support_of};
use crate::error::{Error, Result};
use crate::linalg::inf_norm;
use crate::polytope::extreme_points_of_g;
use crate::settings::Settings;
use crate::system::{Instance, SolutionParam};

/// Relative tolerance for treating two objective values as tied.
const TIE_TOL: f64 = 1e-10;

/// `sum |x_i|^p`; exactly zero for the zero vector.
pub fn lp_objective(x: &[f64], p: f64) -> f64 {
    x.iter()
        .filter(|v| **v != 0.0)
        .map(|v| v.abs().powf(p))
        .sum()
}

/// Where a minimiser sits in `G(radius)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexCertificate {
    pub radius: f64,
    /// Rows of the `G(radius)` H-representation active at `z`.
    pub active_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LpSolution {
    pub p: f64,
    pub x: Vec<f64>,
    pub objective: f64,
    /// Modulus vector `|x|`.
    pub z: Vec<f64>,
    pub support: Vec<usize>,
    pub l0: usize,
    pub residual: f64,
    /// Present when the minimiser was found as a vertex of `G(r)`.
    pub certificate: Option<VertexCertificate>,
    /// Some coordinate reached the search radius, so the box may be binding.
    pub at_radius: bool,
}

impl LpSolution {
    fn new(
        p: f64,
        x: Vec<f64>,
        param: &SolutionParam,
        settings: &Settings,
        certificate: Option<VertexCertificate>,
    ) -> Self {
        let x = snap_zeros(&x, &settings.tol);
        let support = support_of(&x, &settings.tol);
        let residual = param.residual(&DVector::from_column_slice(&x));
        let at_radius = certificate
            .as_ref()
            .is_some_and(|c| inf_norm(&x) >= c.radius - settings.tol.zero_for(c.radius));
        Self {
            p,
            objective: lp_objective(&x, p),
            z: x.iter().map(|v| v.abs()).collect(),
            l0: support.len(),
            support,
            residual,
            x,
            certificate,
            at_radius,
        }
    }
}

/// Finds `x` with `|x| = z` and `Ax = b` by trying sign patterns on the
/// support of `z`: all positive first, then by number of negative signs and
/// binary value.
pub fn recover_sign(z: &[f64], param: &SolutionParam, settings: &Settings) -> Result<Vec<f64>> {
    if z.len() != param.n() {
        return Err(Error::DimensionMismatch {
            expected: param.n(),
            got: z.len(),
        });
    }
    let neg_tol = settings.tol.zero_for(inf_norm(z));
    if z.iter().any(|v| !(v.is_finite() && *v >= -neg_tol)) {
        return Err(Error::SignRecoveryFailure);
    }
    let supp = support_of(z, &settings.tol);
    let k = supp.len();
    if k >= usize::BITS as usize - 1 {
        return Err(Error::BlowupLimit {
            what: "sign patterns",
            count: k,
            limit: usize::BITS as usize - 2,
        });
    }
    let tol = param.feas_tol() * inf_norm(z).max(1.0);
    let mut masks: Vec<usize> = (0..1usize << k).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    for mask in masks {
        let mut x = DVector::zeros(param.n());
        for (bit, &i) in supp.iter().enumerate() {
            x[i] = if mask >> bit & 1 == 1 { -z[i] } else { z[i] };
        }
        if param.residual(&x) <= tol {
            return Ok(x.as_slice().to_vec());
        }
    }
    Err(Error::SignRecoveryFailure)
}

/// Search radius for `P_p`: the smaller of `||x_ls||_p` and twice the largest
/// basic-solution magnitude. Both bound every minimiser; the second stays
/// finite as `p` shrinks.
pub fn lp_radius(inst: &Instance, param: &SolutionParam, p: f64, settings: &Settings) -> f64 {
    let x_ls = param.x_ls().as_slice();
    // ||x_ls||_p in log space: (sum |x|^p)^(1/p).
    let log_norm = lp_objective(x_ls, p).ln() / p;
    let basic = basic_solutions(inst, settings)
        .iter()
        .map(|s| inf_norm(&s.x))
        .fold(0.0_f64, f64::max);
    let basic_bound = 2.0 * basic;
    if basic_bound > 0.0 && (log_norm.is_nan() || log_norm > basic_bound.ln()) {
        basic_bound
    } else {
        log_norm.exp()
    }
}

/// All minimisers of `||x||_p^p` over `Ax = b` that are vertices of `G(r)`,
/// in lexicographic order of their modulus vectors.
///
/// `r` is `radius_override` when given, otherwise [`lp_radius`].
pub fn solve_lp_extreme(
    inst: &Instance,
    param: &SolutionParam,
    p: f64,
    radius_override: Option<f64>,
    settings: &Settings,
) -> Result<Vec<LpSolution>> {
    check_exponent(p)?;
    let radius = match radius_override {
        Some(r) => r,
        None => lp_radius(inst, param, p, settings),
    };
    let vs = extreme_points_of_g(param, radius, settings)?;
    let values: Vec<f64> = vs
        .points
        .iter()
        .map(|z| lp_objective(&snap_zeros(z, &settings.tol), p))
        .collect();
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let cut = best + TIE_TOL * best.abs().max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for ((z, v), active) in vs.points.iter().zip(&values).zip(&vs.active_sets) {
        if *v > cut {
            continue;
        }
        let x = recover_sign(z, param, settings)?;
        let cert = VertexCertificate {
            radius,
            active_rows: active.clone(),
        };
        out.push(LpSolution::new(p, x, param, settings, Some(cert)));
    }
    Ok(out)
}

/// Corank-one oracle: along the solution line the objective is concave
/// between the points where a coordinate vanishes, so the minimum is at one of
/// them. Ties resolve to the smallest line coordinate.
pub fn solve_lp_corank1(param: &SolutionParam, p: f64, settings: &Settings) -> Result<LpSolution> {
    check_exponent(p)?;
    if param.corank() != 1 {
        return Err(Error::CorankMismatch(param.corank()));
    }
    let mut best: Option<(f64, Vec<f64>)> = None;
    for c in breakpoints(param) {
        let x = snap_zeros(param.solution_at(&[c])?.as_slice(), &settings.tol);
        let v = lp_objective(&x, p);
        let better = match &best {
            None => true,
            Some((bv, _)) => v < *bv - TIE_TOL * bv.abs(),
        };
        if better {
            best = Some((v, x));
        }
    }
    let (_, x) =
        best.ok_or_else(|| Error::NumericalRankFailure("null direction is zero".into()))?;
    Ok(LpSolution::new(p, x, param, settings, None))
}

/// Null-space coordinates where some component of `x_ls + c N` vanishes,
/// ascending and deduplicated.
pub(crate) fn breakpoints(param: &SolutionParam) -> Vec<f64> {
    let x_ls = param.x_ls();
    let dir = param.null_basis().column(0);
    let mut cs: Vec<f64> = (0..param.n())
        .filter(|&i| dir[i].abs() > 1e-12)
        .map(|i| -x_ls[i] / dir[i])
        .collect();
    cs.sort_by(f64::total_cmp);
    cs.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
    cs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::system::decompose;

    fn setup(inst: &Instance) -> SolutionParam {
        decompose(inst, &Settings::default()).unwrap()
    }

    fn assert_close(x: &[f64], want: &[f64], tol: f64) {
        assert_eq!(x.len(), want.len());
        for (a, b) in x.iter().zip(want) {
            assert!((a - b).abs() <= tol, "{x:?} vs {want:?}");
        }
    }

    #[test]
    fn objective_values() {
        assert_eq!(lp_objective(&[0.0, 0.0], 0.5), 0.0);
        assert!((lp_objective(&[1.45, 2.0, 0.0, 0.0], 1.0) - 3.45).abs() < 1e-15);
        let direct = 0.1f64.powf(0.8) + 3f64.powf(0.8) + 0.4f64.powf(0.8);
        assert_eq!(lp_objective(&[0.1, 0.0, 3.0, 0.4], 0.8), direct);
        assert_eq!(lp_objective(&[-2.0], 0.5), 2f64.sqrt());
    }

    #[test]
    fn sign_recovery() {
        let s = Settings::default();
        let inst = fixtures::example1();
        let p = setup(&inst);
        let x = recover_sign(&[1.45, 2.0, 0.0, 0.0], &p, &s).unwrap();
        assert_close(&x, &[1.45, 2.0, 0.0, 0.0], 1e-15);

        let inst2 = fixtures::coordinate(1.0, -2.0);
        let p2 = setup(&inst2);
        let z: Vec<f64> = p2.x_ls().iter().map(|v| v.abs()).collect();
        assert_close(
            &recover_sign(&z, &p2, &s).unwrap(),
            &[1.0, -2.0, 0.0],
            1e-14,
        );

        assert_eq!(
            recover_sign(&[1.0, 1.0, 1.0, 1.0], &p, &s).unwrap_err(),
            Error::SignRecoveryFailure
        );
    }

    #[test]
    fn example1_extreme_solver() {
        let s = Settings::default();
        let inst = fixtures::example1();
        let p = setup(&inst);
        let sols = solve_lp_extreme(&inst, &p, 0.8, None, &s).unwrap();
        assert_eq!(sols.len(), 1);
        assert_close(&sols[0].x, &[0.1, 0.0, 3.0, 0.4], 1e-9);
        assert_eq!(sols[0].l0, 3);
        for q in [0.95, 1.0] {
            let sols = solve_lp_extreme(&inst, &p, q, None, &s).unwrap();
            assert_eq!(sols.len(), 1, "p = {q}");
            assert_close(&sols[0].x, &[1.45, 2.0, 0.0, 0.0], 1e-9);
            assert!(!sols[0].at_radius);
        }
    }

    #[test]
    fn coordinate_system_any_p() {
        let s = Settings::default();
        let inst = fixtures::coordinate(1.0, 2.0);
        let p = setup(&inst);
        for q in [0.1, 0.5, 1.0] {
            let sols = solve_lp_extreme(&inst, &p, q, None, &s).unwrap();
            assert_eq!(sols.len(), 1);
            assert_close(&sols[0].x, &[1.0, 2.0, 0.0], 1e-12);
            let c = solve_lp_corank1(&p, q, &s).unwrap();
            assert_close(&c.x, &[1.0, 2.0, 0.0], 1e-12);
        }
    }

    #[test]
    fn corank1_oracle_on_example1() {
        let s = Settings::default();
        let p = setup(&fixtures::example1());
        let sol = solve_lp_corank1(&p, 0.8, &s).unwrap();
        assert_close(&sol.x, &[0.1, 0.0, 3.0, 0.4], 1e-9);
        let sol = solve_lp_corank1(&p, 0.1, &s).unwrap();
        assert_close(&sol.x, &[1.45, 2.0, 0.0, 0.0], 1e-9);
        assert!(sol.certificate.is_none());
    }

    #[test]
    fn corank_mismatch() {
        let inst = crate::load_and_reduce(
            &nalgebra::DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 1.0]),
            &DVector::from_vec(vec![1.0]),
            &Settings::default(),
        )
        .unwrap();
        let p = setup(&inst);
        assert_eq!(
            solve_lp_corank1(&p, 0.5, &Settings::default()).unwrap_err(),
            Error::CorankMismatch(2)
        );
    }

    #[test]
    fn p_one_ties_return_every_vertex() {
        let s = Settings::default();
        let inst = fixtures::single_row();
        let p = setup(&inst);
        let sols = solve_lp_extreme(&inst, &p, 1.0, None, &s).unwrap();
        let xs: Vec<Vec<f64>> = sols.iter().map(|s| s.x.clone()).collect();
        assert_eq!(xs, vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(solve_lp_extreme(&inst, &p, 1.5, None, &s).is_err());
    }

    #[test]
    fn radius_stays_finite_for_tiny_p() {
        let s = Settings::default();
        let inst = fixtures::example1();
        let p = setup(&inst);
        let r = lp_radius(&inst, &p, 1e-4, &s);
        assert!(r.is_finite() && r >= 2.0);
        let r1 = lp_radius(&inst, &p, 1.0, &s);
        assert!((r1 - lp_objective(p.x_ls().as_slice(), 1.0)).abs() < 1e-12);
        let sols = solve_lp_extreme(&inst, &p, 1e-4, None, &s).unwrap();
        assert_close(&sols[0].x, &[1.45, 2.0, 0.0, 0.0], 1e-9);
    }
}

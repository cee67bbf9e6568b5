//! The modulus-dominance polytope
//! `G(r) = { z in [0, r]^n : exists x with Ax = b and |x| <= z }`
//! and the polyhedra it is built from.
//!
//! The lift is written in `(z, c)` with `x = x_ls + N c`, so it has `n + d`
//! variables instead of `2n`.

use super::fourier_motzkin::fm_eliminate;
use super::vertices::{certify, dedup_points, enumerate_bounded, VertexSet};
use super::{HPolyhedron, HalfSpace, RowTag};
use crate::error::{Error, Result};
use crate::linalg::inf_norm;
use crate::settings::Settings;
use crate::system::SolutionParam;

fn check_radius(r: f64) -> Result<()> {
    if r.is_finite() && r > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidRadius(r))
    }
}

fn check_size(param: &SolutionParam, settings: &Settings) -> Result<()> {
    let lim = &settings.limits;
    if param.n() > lim.n_max {
        return Err(Error::BlowupLimit {
            what: "unknowns",
            count: param.n(),
            limit: lim.n_max,
        });
    }
    if param.corank() > lim.d_max {
        return Err(Error::BlowupLimit {
            what: "corank",
            count: param.corank(),
            limit: lim.d_max,
        });
    }
    Ok(())
}

/// Lifted polyhedron in `(z, c)`:
///
/// ```text
/// -z - N c <=  x_ls
/// -z + N c <= -x_ls
///  0 <= z <= r
/// ```
///
/// Rows come in that order: `n` rows of each modulus block, then the lower and
/// upper box rows per coordinate.
pub fn build_lambda(param: &SolutionParam, r: f64) -> Result<HPolyhedron> {
    check_radius(r)?;
    let n = param.n();
    let d = param.corank();
    let q = n + d;
    let x_ls = param.x_ls();
    let null = param.null_basis();
    let mut poly = HPolyhedron::new(q);
    for sign in [-1.0, 1.0] {
        for i in 0..n {
            let mut h = vec![0.0; q];
            h[i] = -1.0;
            for k in 0..d {
                h[n + k] = sign * null[(i, k)];
            }
            poly.push(HalfSpace::new(h, sign * x_ls[i], RowTag::Lambda));
        }
    }
    for i in 0..n {
        let mut lo = vec![0.0; q];
        lo[i] = -1.0;
        poly.push(HalfSpace::new(lo, 0.0, RowTag::Box));
        let mut hi = vec![0.0; q];
        hi[i] = 1.0;
        poly.push(HalfSpace::new(hi, r, RowTag::Box));
    }
    Ok(poly)
}

/// H-representation of `G(r)` in the `z` variables, obtained by eliminating
/// the null-space coordinates from [`build_lambda`].
pub fn g_of_r(param: &SolutionParam, r: f64, settings: &Settings) -> Result<HPolyhedron> {
    check_size(param, settings)?;
    let lambda = build_lambda(param, r)?;
    let n = param.n();
    let c_vars: Vec<usize> = (n..n + param.corank()).collect();
    fm_eliminate(&lambda, &c_vars, settings)
}

/// `{ x : Ax = b, |x_i| <= r }` as `2(n + m)` rows: `+-e_i x <= r` for each
/// coordinate, then `A x <= b` and `-A x <= -b`.
pub fn omega_of_r(param: &SolutionParam, r: f64) -> Result<HPolyhedron> {
    check_radius(r)?;
    let n = param.n();
    let a = param.a();
    let b = param.b();
    let mut poly = HPolyhedron::new(n);
    for i in 0..n {
        for s in [1.0, -1.0] {
            let mut h = vec![0.0; n];
            h[i] = s;
            poly.push(HalfSpace::new(h, r, RowTag::Box));
        }
    }
    for s in [1.0, -1.0] {
        for i in 0..a.nrows() {
            let h: Vec<f64> = a.row(i).iter().map(|v| s * v).collect();
            poly.push(HalfSpace::new(h, s * b[i], RowTag::Equation));
        }
    }
    Ok(poly)
}

/// Extreme points of `G(r)`.
///
/// Every vertex of a projection is the image of a vertex of the lifted
/// polytope, so the lift's vertices are projected to `z` and each candidate
/// is kept only if the rows of [`g_of_r`] active at it have full rank. The
/// returned set's `source` is that H-representation.
pub fn extreme_points_of_g(
    param: &SolutionParam,
    r: f64,
    settings: &Settings,
) -> Result<VertexSet> {
    check_size(param, settings)?;
    let n = param.n();
    let lambda = build_lambda(param, r)?;
    let lifted = enumerate_bounded(&lambda, settings)?;
    // Coordinates within the zero tolerance are exactly zero in G(r).
    let projected: Vec<Vec<f64>> = lifted
        .points
        .iter()
        .map(|p| {
            let z = &p[..n];
            let cut = settings.tol.zero_for(inf_norm(z));
            z.iter()
                .map(|&v| if v.abs() <= cut { 0.0 } else { v })
                .collect()
        })
        .collect();
    let candidates = dedup_points(projected, settings.tol.dedup);
    let g = g_of_r(param, r, settings)?;
    Ok(certify(candidates, &g, settings))
}

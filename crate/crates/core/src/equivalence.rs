//! Radii, the smallest vertex coordinate `r_m`, the exponent bound below which
//! `l_p` minimisers are sparsest solutions, and checks of that claim.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::inf_norm;
use crate::polytope::extreme_points_of_g;
use crate::settings::Settings;
use crate::solvers::{check_exponent, solve_l0, solve_lp_extreme, LpSolution};
use crate::system::{decompose, Instance, SolutionParam};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Radii {
    /// Largest magnitude among the sparsest solutions.
    pub r0: f64,
    /// `n * ||x_ls||_inf`.
    pub r1: f64,
    /// `max(r0, r1)`.
    pub r: f64,
}

pub fn compute_radii(inst: &Instance, param: &SolutionParam, settings: &Settings) -> Radii {
    let r1 = inst.n() as f64 * inf_norm(param.x_ls().as_slice());
    let r0 = solve_l0(inst, settings)
        .iter()
        .map(|s| inf_norm(&s.x))
        .fold(0.0, f64::max);
    Radii {
        r0,
        r1,
        r: r0.max(r1),
    }
}

/// Smallest nonzero coordinate over the vertices of `G(r)`.
pub fn compute_rm(param: &SolutionParam, r: f64, settings: &Settings) -> Result<f64> {
    let vs = extreme_points_of_g(param, r, settings)?;
    vs.points
        .iter()
        .flat_map(|z| {
            let cut = settings.tol.zero_for(inf_norm(z));
            z.iter().copied().filter(move |v| *v > cut)
        })
        .min_by(f64::total_cmp)
        .ok_or(Error::NoNonzeroCoordinate)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RadiusSource {
    PaperFormula,
    Override,
}

/// Outcome of solving `P_p` at one exponent.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    pub p: f64,
    /// Every minimiser has exactly `k0` nonzeros.
    pub holds: bool,
    /// Largest support size among the minimisers.
    pub lp_l0: usize,
    pub minimizers: Vec<LpSolution>,
    /// Every minimiser lies in the box of radius `r_used`. When false the
    /// bound's argument does not apply at this `p`.
    pub within_radius: bool,
    pub below_bound: bool,
    /// `(r_used / r_m)^p * k0`, which the bound keeps below `k0 + 1`.
    pub chain_value: f64,
    pub chain_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceCertificate {
    pub name: Option<String>,
    pub m: usize,
    pub n: usize,
    pub k0: usize,
    pub r0: f64,
    pub r1: f64,
    pub r_used: f64,
    pub r_m: f64,
    pub p_bound: f64,
    /// `r_used <= r_m`, so the bound is 1 for want of a positive denominator.
    pub capped: bool,
    pub radius_source: RadiusSource,
    pub verifications: Vec<Verification>,
}

/// The exponent bound `ln((k0+1)/k0) / (ln r - ln r_m)`, capped at 1.
///
/// `r_m` always comes from the vertices of `G(r1)`; an override replaces only
/// the radius in the denominator.
pub fn compute_bound(
    inst: &Instance,
    radius_override: Option<f64>,
    settings: &Settings,
) -> Result<EquivalenceCertificate> {
    if let Some(r) = radius_override {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidRadius(r));
        }
    }
    let param = decompose(inst, settings)?;
    let k0 = solve_l0(inst, settings)[0].l0;
    let radii = compute_radii(inst, &param, settings);
    let r_m = compute_rm(&param, radii.r1, settings)?;
    let (r_used, radius_source) = match radius_override {
        Some(r) => (r, RadiusSource::Override),
        None => (radii.r, RadiusSource::PaperFormula),
    };
    let denom = r_used.ln() - r_m.ln();
    let capped = denom <= 0.0;
    let p_bound = if capped {
        1.0
    } else {
        let k = k0 as f64;
        (((k + 1.0).ln() - k.ln()) / denom).min(1.0)
    };
    Ok(EquivalenceCertificate {
        name: inst.name.clone(),
        m: inst.m(),
        n: inst.n(),
        k0,
        r0: radii.r0,
        r1: radii.r1,
        r_used,
        r_m,
        p_bound,
        capped,
        radius_source,
        verifications: Vec::new(),
    })
}

fn verify_one(
    inst: &Instance,
    param: &SolutionParam,
    cert: &EquivalenceCertificate,
    p: f64,
    settings: &Settings,
) -> Result<Verification> {
    let minimizers = solve_lp_extreme(inst, param, p, None, settings)?;
    let lp_l0 = minimizers.iter().map(|s| s.l0).max().unwrap_or(0);
    let holds = minimizers.iter().all(|s| s.l0 == cert.k0);
    let slack = settings.tol.zero_for(cert.r_used);
    let within_radius = minimizers
        .iter()
        .all(|s| inf_norm(&s.x) <= cert.r_used + slack);
    let k = cert.k0 as f64;
    let chain_value = (cert.r_used / cert.r_m).powf(p) * k;
    Ok(Verification {
        p,
        holds,
        lp_l0,
        minimizers,
        within_radius,
        below_bound: p < cert.p_bound,
        chain_holds: chain_value < k + 1.0,
        chain_value,
    })
}

/// [`compute_bound`] plus an exact solve of `P_p` for every `p` in `p_list`.
pub fn verify_equivalence(
    inst: &Instance,
    p_list: &[f64],
    radius_override: Option<f64>,
    settings: &Settings,
) -> Result<EquivalenceCertificate> {
    if p_list.is_empty() {
        return Err(Error::InvalidShape("empty exponent list".into()));
    }
    for &p in p_list {
        check_exponent(p)?;
    }
    let mut cert = compute_bound(inst, radius_override, settings)?;
    let param = decompose(inst, settings)?;
    cert.verifications = p_list
        .iter()
        .map(|&p| verify_one(inst, &param, &cert, p, settings))
        .collect::<Result<_>>()?;
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub certificate: EquivalenceCertificate,
    /// Largest grid value such that it and every smaller grid value hold.
    pub hold_prefix_max: Option<f64>,
    /// Smallest grid value that fails. Grid values above it may still hold.
    pub first_failure: Option<f64>,
}

/// Runs [`verify_equivalence`] over an ascending grid in `(0, 1]`.
pub fn scan_pstar(
    inst: &Instance,
    grid: &[f64],
    radius_override: Option<f64>,
    settings: &Settings,
) -> Result<ScanReport> {
    if grid.is_empty() {
        return Err(Error::InvalidShape("empty exponent grid".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidShape(
            "exponent grid must be strictly ascending".into(),
        ));
    }
    let certificate = verify_equivalence(inst, grid, radius_override, settings)?;
    let first_failure = certificate
        .verifications
        .iter()
        .find(|v| !v.holds)
        .map(|v| v.p);
    let hold_prefix_max = certificate
        .verifications
        .iter()
        .take_while(|v| v.holds)
        .last()
        .map(|v| v.p);
    Ok(ScanReport {
        certificate,
        hold_prefix_max,
        first_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn radii_examples() {
        let s = Settings::default();
        let inst = fixtures::single_row();
        let r = compute_radii(&inst, &decompose(&inst, &s).unwrap(), &s);
        assert!((r.r1 - 1.0).abs() < 1e-12 && (r.r0 - 1.0).abs() < 1e-12);
        assert!((r.r - 1.0).abs() < 1e-12);

        let inst = crate::load_and_reduce(
            &nalgebra::DMatrix::from_row_slice(1, 2, &[1.0, 0.0]),
            &nalgebra::DVector::from_vec(vec![3.0]),
            &s,
        )
        .unwrap();
        let r = compute_radii(&inst, &decompose(&inst, &s).unwrap(), &s);
        assert_eq!((r.r0, r.r1, r.r), (3.0, 6.0, 6.0));

        let inst = fixtures::example1();
        let r = compute_radii(&inst, &decompose(&inst, &s).unwrap(), &s);
        assert!((r.r0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rm_examples() {
        let s = Settings::default();
        let p = decompose(&fixtures::single_row(), &s).unwrap();
        assert!((compute_rm(&p, 1.0, &s).unwrap() - 1.0).abs() < 1e-12);
        assert!((compute_rm(&p, 2.0, &s).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn example1_bound_with_radius_two() {
        let s = Settings::default();
        let cert = compute_bound(&fixtures::example1(), Some(2.0), &s).unwrap();
        assert_eq!(cert.k0, 2);
        assert!((cert.r_m - 0.1).abs() < 1e-9);
        let want = 1.5f64.ln() / 20f64.ln();
        assert!((cert.p_bound - want).abs() < 1e-4);
        assert_eq!(cert.radius_source, RadiusSource::Override);
        assert!(!cert.capped);
    }

    #[test]
    fn single_row_is_capped() {
        let cert = compute_bound(&fixtures::single_row(), None, &Settings::default()).unwrap();
        assert!(cert.capped);
        assert_eq!(cert.p_bound, 1.0);
        assert_eq!(cert.radius_source, RadiusSource::PaperFormula);
    }

    #[test]
    fn coordinate_system_bound() {
        let s = Settings::default();
        let cert =
            verify_equivalence(&fixtures::coordinate(1.0, 2.0), &[0.05, 0.5], None, &s).unwrap();
        assert_eq!(cert.k0, 2);
        assert!(cert.p_bound > 0.0);
        assert!(cert.verifications.iter().all(|v| v.holds));
    }

    #[test]
    fn example1_verifications() {
        let s = Settings::default();
        let cert =
            verify_equivalence(&fixtures::example1(), &[0.1, 0.8, 0.95], Some(2.0), &s).unwrap();
        let v: Vec<(bool, usize)> = cert
            .verifications
            .iter()
            .map(|v| (v.holds, v.lp_l0))
            .collect();
        assert_eq!(v, vec![(true, 2), (false, 3), (true, 2)]);
        assert!(cert.verifications[0].below_bound && cert.verifications[0].chain_holds);
        assert!(!cert.verifications[1].chain_holds);
    }

    #[test]
    fn scan_summary() {
        let s = Settings::default();
        let grid = [0.05, 0.1, 0.13, 0.5, 0.8, 0.95, 1.0];
        let rep = scan_pstar(&fixtures::example1(), &grid, Some(2.0), &s).unwrap();
        assert_eq!(rep.first_failure.map(|p| p <= 0.8), Some(true));
        let tail: Vec<bool> = rep.certificate.verifications[5..]
            .iter()
            .map(|v| v.holds)
            .collect();
        assert_eq!(tail, vec![true, true]);

        let rep = scan_pstar(&fixtures::single_row(), &[0.25, 0.5, 0.75], None, &s).unwrap();
        assert_eq!((rep.hold_prefix_max, rep.first_failure), (Some(0.75), None));

        let rep = scan_pstar(&fixtures::single_row(), &[0.5], None, &s).unwrap();
        assert_eq!(rep.certificate.verifications.len(), 1);

        assert!(scan_pstar(&fixtures::single_row(), &[], None, &s).is_err());
        assert!(scan_pstar(&fixtures::single_row(), &[0.5, 0.25], None, &s).is_err());
    }
}

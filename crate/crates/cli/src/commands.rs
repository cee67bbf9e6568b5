use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use lpequiv_core::curve::sample_curve;
use lpequiv_core::equivalence::{
    scan_pstar, verify_equivalence, EquivalenceCertificate, ScanReport,
};
use lpequiv_core::instance_text::parse_instance;
use lpequiv_core::report::{fmt17, to_json};
use lpequiv_core::solvers::{solve_l0, solve_lp_extreme, LpSolution, SparseSolution};
use lpequiv_core::{decompose, load_and_reduce, Instance, Settings};
use serde::Serialize;

use crate::config::{Format, TRange};

/// Exponents checked by `analyze` and `scan` when none are given.
pub const DEFAULT_GRID: [f64; 7] = [0.05, 0.1, 0.13, 0.5, 0.8, 0.95, 1.0];
/// Exponents drawn by `curve` when none are given.
pub const DEFAULT_CURVE_P: [f64; 5] = [0.1, 0.135, 0.8, 0.95, 1.0];

pub fn load_instance(path: &Path, settings: &Settings) -> anyhow::Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| crate::Usage(format!("cannot read {}: {e}", path.display())))?;
    let raw = parse_instance(&text)?;
    let inst = load_and_reduce(&raw.a, &raw.b, settings)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(inst.with_name(name))
}

fn vec_str(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| fmt17(*v)).collect();
    format!("[{}]", parts.join(", "))
}

fn opt_str(x: Option<f64>) -> String {
    x.map_or_else(|| "none".into(), fmt17)
}

fn verification_csv(cert: &EquivalenceCertificate) -> String {
    let mut out = String::from("p,holds,lp_l0,within_radius,below_bound,chain_value,chain_holds\n");
    for v in &cert.verifications {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt17(v.p),
            v.holds,
            v.lp_l0,
            v.within_radius,
            v.below_bound,
            fmt17(v.chain_value),
            v.chain_holds
        )
        .unwrap();
    }
    out
}

fn certificate_text(cert: &EquivalenceCertificate, out: &mut String) {
    writeln!(out, "k0: {}", cert.k0).unwrap();
    writeln!(out, "r0: {}", fmt17(cert.r0)).unwrap();
    writeln!(out, "r1: {}", fmt17(cert.r1)).unwrap();
    writeln!(out, "r_used: {}", fmt17(cert.r_used)).unwrap();
    writeln!(
        out,
        "radius_source: {}",
        to_json(&cert.radius_source).trim_matches('"')
    )
    .unwrap();
    writeln!(out, "r_m: {}", fmt17(cert.r_m)).unwrap();
    writeln!(out, "p_bound: {}", fmt17(cert.p_bound)).unwrap();
    writeln!(out, "capped: {}", cert.capped).unwrap();
    for v in &cert.verifications {
        writeln!(
            out,
            "p = {}: holds = {}, lp_l0 = {}, within_radius = {}, below_bound = {}",
            fmt17(v.p),
            v.holds,
            v.lp_l0,
            v.within_radius,
            v.below_bound
        )
        .unwrap();
    }
}

#[derive(Serialize)]
struct AnalyzeReport<'a> {
    name: Option<&'a str>,
    original_rows: usize,
    kept_rows: &'a [usize],
    m: usize,
    n: usize,
    corank: usize,
    x_ls: &'a [f64],
    /// Columns of the orthonormal null-space basis.
    null_basis: Vec<Vec<f64>>,
    sparsest: Vec<SparseSolution>,
    certificate: EquivalenceCertificate,
}

pub fn analyze(
    inst: &Instance,
    p_list: &[f64],
    radius: Option<f64>,
    format: Format,
    settings: &Settings,
) -> anyhow::Result<String> {
    let param = decompose(inst, settings)?;
    let certificate = verify_equivalence(inst, p_list, radius, settings)?;
    let report = AnalyzeReport {
        name: inst.name.as_deref(),
        original_rows: inst.original_rows,
        kept_rows: &inst.kept_rows,
        m: inst.m(),
        n: inst.n(),
        corank: inst.corank(),
        x_ls: param.x_ls().as_slice(),
        null_basis: param
            .null_basis()
            .column_iter()
            .map(|c| c.iter().copied().collect())
            .collect(),
        sparsest: solve_l0(inst, settings),
        certificate,
    };
    Ok(match format {
        Format::Json => to_json(&report) + "\n",
        Format::Csv => verification_csv(&report.certificate),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "instance: {}", report.name.unwrap_or("")).unwrap();
            writeln!(
                out,
                "rows: {} of {} kept, n = {}, corank = {}",
                report.m, report.original_rows, report.n, report.corank
            )
            .unwrap();
            writeln!(out, "x_ls: {}", vec_str(report.x_ls)).unwrap();
            for (j, c) in report.null_basis.iter().enumerate() {
                writeln!(out, "null[{j}]: {}", vec_str(c)).unwrap();
            }
            for s in &report.sparsest {
                writeln!(out, "sparsest: {} support {:?}", vec_str(&s.x), s.support).unwrap();
            }
            certificate_text(&report.certificate, &mut out);
            out
        }
    })
}

#[derive(Serialize)]
struct L0Report<'a> {
    name: Option<&'a str>,
    problem: &'static str,
    k0: usize,
    solutions: Vec<SparseSolution>,
}

#[derive(Serialize)]
struct LpReport<'a> {
    name: Option<&'a str>,
    problem: &'static str,
    p: f64,
    solutions: Vec<LpSolution>,
}

fn solutions_csv<'a>(rows: impl Iterator<Item = (&'a [f64], f64, usize)>, n: usize) -> String {
    let mut out = String::from("index");
    for i in 1..=n {
        write!(out, ",x_{i}").unwrap();
    }
    out.push_str(",objective,l0\n");
    for (k, (x, obj, l0)) in rows.enumerate() {
        write!(out, "{k}").unwrap();
        for v in x {
            write!(out, ",{}", fmt17(*v)).unwrap();
        }
        writeln!(out, ",{},{l0}", fmt17(obj)).unwrap();
    }
    out
}

pub fn solve(
    inst: &Instance,
    p: Option<f64>,
    radius: Option<f64>,
    format: Format,
    settings: &Settings,
) -> anyhow::Result<String> {
    let name = inst.name.as_deref();
    let Some(p) = p else {
        let solutions = solve_l0(inst, settings);
        let report = L0Report {
            name,
            problem: "l0",
            k0: solutions[0].l0,
            solutions,
        };
        return Ok(match format {
            Format::Json => to_json(&report) + "\n",
            Format::Csv => solutions_csv(
                report
                    .solutions
                    .iter()
                    .map(|s| (s.x.as_slice(), s.l0 as f64, s.l0)),
                inst.n(),
            ),
            Format::Text => {
                let mut out = format!("k0: {}\n", report.k0);
                for s in &report.solutions {
                    writeln!(out, "x: {} support {:?}", vec_str(&s.x), s.support).unwrap();
                }
                out
            }
        });
    };
    let param = decompose(inst, settings)?;
    let solutions = solve_lp_extreme(inst, &param, p, radius, settings)?;
    let report = LpReport {
        name,
        problem: "lp",
        p,
        solutions,
    };
    Ok(match format {
        Format::Json => to_json(&report) + "\n",
        Format::Csv => solutions_csv(
            report
                .solutions
                .iter()
                .map(|s| (s.x.as_slice(), s.objective, s.l0)),
            inst.n(),
        ),
        Format::Text => {
            let mut out = format!("p: {}\n", fmt17(p));
            for s in &report.solutions {
                writeln!(
                    out,
                    "x: {} objective {} l0 {}{}",
                    vec_str(&s.x),
                    fmt17(s.objective),
                    s.l0,
                    if s.at_radius {
                        " (at search radius)"
                    } else {
                        ""
                    }
                )
                .unwrap();
            }
            out
        }
    })
}

#[derive(Serialize)]
struct CurveSummary {
    out: String,
    coordinate: usize,
    rows: usize,
    /// `(p, t)` pairs: where each column is smallest.
    argmin: Vec<(f64, f64)>,
}

pub fn curve(
    inst: &Instance,
    p_list: &[f64],
    range: TRange,
    out_path: &Path,
    format: Format,
    settings: &Settings,
) -> anyhow::Result<String> {
    let param = decompose(inst, settings)?;
    let c = sample_curve(&param, p_list, range.min, range.max, range.steps, settings)?;
    std::fs::write(out_path, c.to_csv())
        .with_context(|| format!("writing {}", out_path.display()))?;
    let summary = CurveSummary {
        out: out_path.display().to_string(),
        coordinate: c.coordinate,
        rows: c.rows.len(),
        argmin: (0..p_list.len())
            .map(|j| (p_list[j], c.argmin(j).unwrap_or(f64::NAN)))
            .collect(),
    };
    Ok(match format {
        Format::Json => to_json(&summary) + "\n",
        Format::Text | Format::Csv => {
            let mut out = format!(
                "wrote {} rows to {} (t = x_{})\n",
                summary.rows,
                summary.out,
                summary.coordinate + 1
            );
            for (p, t) in &summary.argmin {
                writeln!(out, "p = {}: argmin t = {}", fmt17(*p), fmt17(*t)).unwrap();
            }
            out
        }
    })
}

pub fn scan(
    inst: &Instance,
    grid: &[f64],
    radius: Option<f64>,
    format: Format,
    settings: &Settings,
) -> anyhow::Result<String> {
    let report: ScanReport = scan_pstar(inst, grid, radius, settings)?;
    Ok(match format {
        Format::Json => to_json(&report) + "\n",
        Format::Csv => verification_csv(&report.certificate),
        Format::Text => {
            let mut out = String::new();
            certificate_text(&report.certificate, &mut out);
            writeln!(out, "hold_prefix_max: {}", opt_str(report.hold_prefix_max)).unwrap();
            writeln!(out, "first_failure: {}", opt_str(report.first_failure)).unwrap();
            out
        }
    })
}

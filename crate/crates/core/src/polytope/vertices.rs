//! Vertex enumeration by exhaustive search over linearly independent
//! active-row subsets.
//!
//! Rows are visited grouped by their first variable. A subset is abandoned as
//! soon as some variable can no longer be covered by a remaining row, which
//! keeps the search small on polyhedra whose rows touch few variables.

use std::cmp::Ordering;

use serde::Serialize;

use super::{feasible, HPolyhedron};
use crate::error::{Error, Result};
use crate::linalg::{row_rank, solve_rows, OrthoBasis};
use crate::settings::Settings;

/// Rows whose residual against the chosen ones falls below this fraction of
/// their norm are treated as dependent.
const INDEPENDENCE_TOL: f64 = 1e-9;

/// Extreme points of a polytope with their active-row certificates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VertexSet {
    pub points: Vec<Vec<f64>>,
    /// For each point, every row of `source` active at it.
    pub active_sets: Vec<Vec<usize>>,
    #[serde(skip)]
    pub source: HPolyhedron,
}

impl VertexSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.source.dim()
    }
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn close(a: &[f64], b: &[f64], base: f64) -> bool {
    let scale = a.iter().chain(b).fold(0.0_f64, |m, v| m.max(v.abs()));
    let tol = base * (1.0 + scale);
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

/// Sorts lexicographically and merges points that agree within the dedup
/// tolerance (scaled by the larger of the two points).
pub(crate) fn dedup_points(mut pts: Vec<Vec<f64>>, base: f64) -> Vec<Vec<f64>> {
    // Fold -0.0 into 0.0 so ordering and output do not depend on signed zeros.
    pts.iter_mut().flatten().for_each(|v| *v += 0.0);
    pts.sort_by(|a, b| lex_cmp(a, b));
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(pts.len());
    for p in pts {
        if !out.iter().any(|q| close(q, &p, base)) {
            out.push(p);
        }
    }
    out
}

/// Depth-first search over independent row subsets of a fixed size.
struct SubsetSearch<'a> {
    rows: Vec<&'a [f64]>,
    /// Largest row position with a nonzero entry in each variable.
    last_use: Vec<Option<usize>>,
    target: usize,
    dim: usize,
    nodes: usize,
    node_cap: usize,
}

impl<'a> SubsetSearch<'a> {
    fn new(rows: Vec<&'a [f64]>, dim: usize, target: usize, node_cap: usize) -> Self {
        let mut last_use = vec![None; dim];
        for (pos, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if *v != 0.0 {
                    last_use[j] = Some(pos);
                }
            }
        }
        Self {
            rows,
            last_use,
            target,
            dim,
            nodes: 0,
            node_cap,
        }
    }

    /// Calls `leaf` with each independent subset of size `target` whose
    /// coverage leaves at most `dim - target` variables untouched.
    fn run<F: FnMut(&[usize], &OrthoBasis)>(&mut self, leaf: &mut F) -> Result<()> {
        let mut chosen = Vec::with_capacity(self.target);
        let mut cover = vec![0usize; self.dim];
        let mut basis = OrthoBasis::new(self.dim);
        self.dfs(0, &mut chosen, &mut cover, &mut basis, leaf)
    }

    fn dfs<F: FnMut(&[usize], &OrthoBasis)>(
        &mut self,
        start: usize,
        chosen: &mut Vec<usize>,
        cover: &mut [usize],
        basis: &mut OrthoBasis,
        leaf: &mut F,
    ) -> Result<()> {
        if chosen.len() == self.target {
            leaf(chosen, basis);
            return Ok(());
        }
        let slack = self.dim - self.target;
        let need = self.target - chosen.len();
        for i in start..=self.rows.len().saturating_sub(need) {
            self.nodes += 1;
            if self.nodes > self.node_cap {
                return Err(Error::BlowupLimit {
                    what: "vertex enumeration nodes",
                    count: self.nodes,
                    limit: self.node_cap,
                });
            }
            let row = self.rows[i];
            // Uncovered variables with no row at or after i: fatal for every later i too.
            let lost = (0..self.dim)
                .filter(|&j| cover[j] == 0 && self.last_use[j].is_none_or(|l| l < i))
                .count();
            if lost > slack {
                break;
            }
            // Variables left uncovered by choosing row i with no later row to cover them.
            let stranded = (0..self.dim)
                .filter(|&j| cover[j] == 0 && row[j] == 0.0)
                .filter(|&j| self.last_use[j].is_none_or(|l| l <= i))
                .count();
            if stranded > slack {
                continue;
            }
            if !basis.try_push(row, INDEPENDENCE_TOL) {
                continue;
            }
            chosen.push(i);
            for (j, v) in row.iter().enumerate() {
                if *v != 0.0 {
                    cover[j] += 1;
                }
            }
            let res = self.dfs(i + 1, chosen, cover, basis, leaf);
            for (j, v) in row.iter().enumerate() {
                if *v != 0.0 {
                    cover[j] -= 1;
                }
            }
            chosen.pop();
            basis.pop();
            res?;
        }
        Ok(())
    }
}

/// Row order used by the search: grouped by first nonzero variable.
fn search_order(poly: &HPolyhedron) -> Vec<usize> {
    let mut order: Vec<usize> = (0..poly.len())
        .filter(|&i| !poly.rows()[i].is_constant())
        .collect();
    order.sort_by_key(|&i| {
        poly.rows()[i]
            .h
            .iter()
            .position(|v| *v != 0.0)
            .unwrap_or(usize::MAX)
    });
    order
}

/// True when every variable has a single-variable row bounding it from above
/// and from below.
fn trivially_bounded(poly: &HPolyhedron) -> bool {
    let q = poly.dim();
    let mut up = vec![false; q];
    let mut down = vec![false; q];
    for r in poly.rows() {
        let nz: Vec<usize> = (0..q).filter(|&j| r.h[j] != 0.0).collect();
        if let [j] = nz.as_slice() {
            if r.h[*j] > 0.0 {
                up[*j] = true;
            } else {
                down[*j] = true;
            }
        }
    }
    up.iter().zip(&down).all(|(a, b)| *a && *b)
}

/// Looks for a nonzero `y` with `H y <= 0` among the extreme-ray candidates
/// (directions fixed by `q - 1` independent rows).
fn has_recession_direction(poly: &HPolyhedron, settings: &Settings) -> Result<bool> {
    let q = poly.dim();
    let rows: Vec<&[f64]> = poly.rows().iter().map(|r| r.h.as_slice()).collect();
    if row_rank(q, rows.iter().copied(), INDEPENDENCE_TOL) < q {
        return Ok(true);
    }
    if q == 1 {
        // Not trivially bounded, so one side of the line is open.
        return Ok(true);
    }
    let order = search_order(poly);
    let ordered: Vec<&[f64]> = order.iter().map(|&i| rows[i]).collect();
    let mut search = SubsetSearch::new(ordered, q, q - 1, settings.limits.enum_node_cap);
    let mut found = false;
    search.run(&mut |_, basis: &OrthoBasis| {
        if found {
            return;
        }
        // The ray spans the orthogonal complement of the chosen rows.
        let y = (0..q)
            .map(|j| {
                let mut e = vec![0.0; q];
                e[j] = 1.0;
                basis.residual(&e)
            })
            .max_by(|a, b| {
                let na: f64 = a.iter().map(|v| v * v).sum();
                let nb: f64 = b.iter().map(|v| v * v).sum();
                na.total_cmp(&nb)
            })
            .unwrap();
        for sign in [1.0, -1.0] {
            let ok = rows.iter().all(|h| {
                let s: f64 = h.iter().zip(&y).map(|(a, b)| a * b * sign).sum();
                let scale = h.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                s <= 1e-10 * scale
            });
            if ok {
                found = true;
            }
        }
    })?;
    Ok(found)
}

/// Enumerates every vertex of a bounded polyhedron.
///
/// Output is sorted lexicographically; degenerate vertices reached from
/// several subsets appear once, with all their active rows.
pub fn enumerate_vertices(poly: &HPolyhedron, settings: &Settings) -> Result<VertexSet> {
    if poly.certified_empty() {
        return Ok(empty_set(poly));
    }
    if !trivially_bounded(poly) && has_recession_direction(poly, settings)? {
        return if feasible(poly, settings)? {
            Err(Error::Unbounded)
        } else {
            Ok(empty_set(poly))
        };
    }
    enumerate_bounded(poly, settings)
}

fn empty_set(poly: &HPolyhedron) -> VertexSet {
    VertexSet {
        points: Vec::new(),
        active_sets: Vec::new(),
        source: poly.clone(),
    }
}

/// Vertex search without the boundedness check; callers guarantee a polytope.
pub(crate) fn enumerate_bounded(poly: &HPolyhedron, settings: &Settings) -> Result<VertexSet> {
    let q = poly.dim();
    let feas = settings.tol.feas;
    let order = search_order(poly);
    let ordered: Vec<&[f64]> = order.iter().map(|&i| poly.rows()[i].h.as_slice()).collect();
    let rhs: Vec<f64> = order.iter().map(|&i| poly.rows()[i].gamma).collect();

    let mut candidates = Vec::new();
    let mut search = SubsetSearch::new(ordered.clone(), q, q, settings.limits.enum_node_cap);
    search.run(&mut |chosen: &[usize], _| {
        let sys: Vec<&[f64]> = chosen.iter().map(|&i| ordered[i]).collect();
        let g: Vec<f64> = chosen.iter().map(|&i| rhs[i]).collect();
        if let Some(x) = solve_rows(&sys, &g) {
            if poly.contains(&x, feas) {
                candidates.push(x);
            }
        }
    })?;

    let points = dedup_points(candidates, settings.tol.dedup);
    Ok(certify(points, poly, settings))
}

/// Keeps the points whose active rows in `poly` have full rank, recording the
/// active sets.
pub(crate) fn certify(points: Vec<Vec<f64>>, poly: &HPolyhedron, settings: &Settings) -> VertexSet {
    let q = poly.dim();
    let feas = settings.tol.feas;
    let mut kept = Vec::new();
    let mut active_sets = Vec::new();
    for p in points {
        let active = poly.active_rows(&p, feas);
        let rank = row_rank(
            q,
            active.iter().map(|&i| poly.rows()[i].h.as_slice()),
            INDEPENDENCE_TOL,
        );
        if rank == q {
            kept.push(p);
            active_sets.push(active);
        }
    }
    VertexSet {
        points: kept,
        active_sets,
        source: poly.clone(),
    }
}

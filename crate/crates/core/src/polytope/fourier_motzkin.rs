//! Fourier-Motzkin elimination with syntactic pruning.
//!
//! Rows are kept scaled so that their largest coefficient has magnitude one.
//! Pruning removes trivially true constant rows and, among parallel rows with
//! the same normal, keeps only the tightest. Equality pairs (`r` and `-r`
//! both present) are used for substitution instead of pairwise combination.

use std::collections::HashMap;

use super::{HPolyhedron, HalfSpace, RowTag};
use crate::error::{Error, Result};
use crate::settings::Settings;

/// Coefficients below this (relative to the combined row scale) are zeroed.
const COEF_EPS: f64 = 1e-12;
/// Quantisation used to key normals for duplicate detection.
const KEY_SCALE: f64 = 1e9;

#[derive(Debug, Clone)]
struct Row {
    h: Vec<f64>,
    gamma: f64,
    tag: RowTag,
}

type Key = Vec<i64>;

fn key_of(h: &[f64]) -> Key {
    h.iter().map(|v| (v * KEY_SCALE).round() as i64).collect()
}

fn neg_key(k: &Key) -> Key {
    k.iter().map(|v| -v).collect()
}

/// Working set of normalised rows with duplicate suppression.
struct RowSet {
    rows: Vec<Row>,
    index: HashMap<Key, usize>,
    contradiction: bool,
    feas_tol: f64,
}

impl RowSet {
    fn new(feas_tol: f64) -> Self {
        Self {
            rows: Vec::new(),
            index: HashMap::new(),
            contradiction: false,
            feas_tol,
        }
    }

    /// Inserts a row after cleaning; `scale` bounds the magnitudes that were
    /// combined to produce it.
    fn insert(&mut self, mut h: Vec<f64>, gamma: f64, tag: RowTag, scale: f64) {
        let coef_cut = COEF_EPS * scale.max(1.0);
        for v in h.iter_mut() {
            if v.abs() <= coef_cut {
                *v = 0.0;
            }
        }
        let hmax = h.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if hmax == 0.0 {
            if gamma < -self.feas_tol * (1.0 + scale) {
                self.contradiction = true;
            }
            return;
        }
        h.iter_mut().for_each(|v| *v /= hmax);
        let gamma = gamma / hmax;
        let key = key_of(&h);
        match self.index.get(&key) {
            Some(&i) => {
                if gamma < self.rows[i].gamma {
                    self.rows[i].gamma = gamma;
                    self.rows[i].h = h;
                }
            }
            None => {
                self.index.insert(key, self.rows.len());
                self.rows.push(Row { h, gamma, tag });
            }
        }
    }

    /// First row whose negation is also present with opposite right-hand side
    /// and that involves variable `var`.
    fn equality_pair(&self, var: usize) -> Option<(usize, usize)> {
        for (i, r) in self.rows.iter().enumerate() {
            if r.h[var] == 0.0 {
                continue;
            }
            if let Some(&j) = self.index.get(&neg_key(&key_of(&r.h))) {
                let tol = self.feas_tol * (1.0 + r.gamma.abs());
                if (r.gamma + self.rows[j].gamma).abs() <= tol {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn eliminate_one(set: RowSet, var: usize, cap: usize) -> Result<RowSet> {
    let feas_tol = set.feas_tol;
    let mut out = RowSet::new(feas_tol);
    out.contradiction = set.contradiction;

    if let Some((i, j)) = set.equality_pair(var) {
        let eq = &set.rows[i];
        let pivot = eq.h[var];
        for (k, r) in set.rows.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            let a = r.h[var];
            if a == 0.0 {
                out.insert(r.h.clone(), r.gamma, r.tag, 1.0);
                continue;
            }
            let f = a / pivot;
            let h: Vec<f64> = r.h.iter().zip(&eq.h).map(|(x, e)| x - f * e).collect();
            let gamma = r.gamma - f * eq.gamma;
            let scale = 1.0 + f.abs() + r.gamma.abs() + (f * eq.gamma).abs();
            out.insert(h, gamma, RowTag::Derived, scale);
        }
    } else {
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in &set.rows {
            let a = r.h[var];
            if a > 0.0 {
                pos.push(r);
            } else if a < 0.0 {
                neg.push(r);
            } else {
                out.insert(r.h.clone(), r.gamma, r.tag, 1.0);
            }
        }
        if out.rows.len() + pos.len() * neg.len() > cap {
            return Err(Error::BlowupLimit {
                what: "Fourier-Motzkin rows",
                count: out.rows.len() + pos.len() * neg.len(),
                limit: cap,
            });
        }
        for p in &pos {
            let sp = 1.0 / p.h[var];
            for n in &neg {
                let sn = -1.0 / n.h[var];
                let h: Vec<f64> = p.h.iter().zip(&n.h).map(|(a, b)| a * sp + b * sn).collect();
                let gamma = p.gamma * sp + n.gamma * sn;
                let scale = sp + sn + (p.gamma * sp).abs() + (n.gamma * sn).abs();
                out.insert(h, gamma, RowTag::Derived, scale);
            }
        }
    }
    if out.rows.len() > cap {
        return Err(Error::BlowupLimit {
            what: "Fourier-Motzkin rows",
            count: out.rows.len(),
            limit: cap,
        });
    }
    Ok(out)
}

fn load(poly: &HPolyhedron, settings: &Settings) -> RowSet {
    let mut set = RowSet::new(settings.tol.feas);
    set.contradiction = poly.certified_empty();
    for r in poly.rows() {
        set.insert(r.h.clone(), r.gamma, r.tag, 1.0);
    }
    set
}

/// Projects `poly` onto the coordinates not listed in `drop_vars`.
///
/// The result lives in `R^(dim - |drop_vars|)` with the surviving coordinates
/// in their original order. An empty input projects to a polyhedron carrying
/// the contradiction row `0 <= -1`.
pub fn fm_eliminate(
    poly: &HPolyhedron,
    drop_vars: &[usize],
    settings: &Settings,
) -> Result<HPolyhedron> {
    let dim = poly.dim();
    let mut drop: Vec<usize> = drop_vars.to_vec();
    drop.sort_unstable();
    drop.dedup();
    if let Some(&bad) = drop.iter().find(|&&v| v >= dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bad + 1,
        });
    }
    let cap = settings.limits.fm_row_cap;
    let mut set = load(poly, settings);

    let mut pending = drop.clone();
    while !pending.is_empty() {
        // Cheapest variable first; ties broken by index.
        let (slot, _) = pending
            .iter()
            .enumerate()
            .map(|(slot, &v)| {
                let (p, n) = set.rows.iter().fold((0usize, 0usize), |(p, n), r| {
                    if r.h[v] > 0.0 {
                        (p + 1, n)
                    } else if r.h[v] < 0.0 {
                        (p, n + 1)
                    } else {
                        (p, n)
                    }
                });
                let cost = if set.equality_pair(v).is_some() {
                    0
                } else {
                    (p * n) as i64 - (p + n) as i64
                };
                (slot, cost)
            })
            .min_by_key(|&(slot, cost)| (cost, slot))
            .unwrap();
        let var = pending.remove(slot);
        set = eliminate_one(set, var, cap)?;
    }

    let keep: Vec<usize> = (0..dim)
        .filter(|j| drop.binary_search(j).is_err())
        .collect();
    let out_dim = keep.len().max(1);
    let mut out = HPolyhedron::new(out_dim);
    for r in &set.rows {
        let mut h: Vec<f64> = keep.iter().map(|&j| r.h[j]).collect();
        if h.is_empty() {
            h.push(0.0);
        }
        out.push(HalfSpace::new(h, r.gamma, r.tag));
    }
    if set.contradiction {
        out.push(HalfSpace::new(vec![0.0; out_dim], -1.0, RowTag::Derived));
    }
    Ok(out)
}

/// Exact emptiness test: eliminates every variable and looks for a
/// contradictory constant row.
pub fn feasible(poly: &HPolyhedron, settings: &Settings) -> Result<bool> {
    let all: Vec<usize> = (0..poly.dim()).collect();
    let projected = fm_eliminate(poly, &all, settings)?;
    Ok(!projected.certified_empty())
}

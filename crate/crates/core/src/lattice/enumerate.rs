//! Exact enumeration of `(L - g)` inside a symmetric box.
//!
//! The box is mapped to the unit cube, the scaled basis is LLL-reduced, and a
//! Fincke-Pohst search lists every coefficient vector inside the circumscribed
//! ball. Each candidate is then re-evaluated through `Lattice::point` and kept
//! only if it passes the coordinate-wise membership test, so the reduction only
//! affects speed, never the result.

use std::sync::atomic::{AtomicU64, Ordering};

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::Serialize;

use super::{Lattice, SymBox, MEMBERSHIP_TOL};
use crate::error::{Error, Result};

/// Default cap on the expected number of enumerated points.
pub const DEFAULT_BUDGET: f64 = 1e8;
const LLL_DELTA: f64 = 0.99;
const LLL_MAX_STEPS: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoxPoint {
    pub coeffs: Vec<i64>,
    /// `A c - g`.
    pub point: Vec<f64>,
}

pub fn enumerate_box(lat: &Lattice, bx: &SymBox, shift: &[f64]) -> Result<Vec<BoxPoint>> {
    enumerate_box_with_budget(lat, bx, shift, DEFAULT_BUDGET)
}

pub fn enumerate_box_with_budget(lat: &Lattice, bx: &SymBox, shift: &[f64], budget: f64) -> Result<Vec<BoxPoint>> {
    let k = lat.k();
    if bx.k() != k || shift.len() != k {
        return Err(Error::InvalidInput(format!("dimension mismatch: lattice {k}, box {}, shift {}", bx.k(), shift.len())));
    }
    if k > 4 {
        return Err(Error::InvalidInput(format!("enumeration supports k <= 4, got {k}")));
    }
    let estimated = bx.volume() / lat.det_abs();
    if estimated > budget {
        return Err(Error::BudgetExceeded { estimated, budget });
    }
    let s = bx.radii();
    let (u, reduced) = lll_reduce(lat, s)?;
    let r = DMatrix::from_fn(k, k, |i, j| reduced[j][i]);
    let qr = r.qr();
    let q = qr.q();
    let t = qr.r();
    let center = DVector::from_iterator(k, shift.iter().zip(s).map(|(g, si)| g / si));
    let target = q.transpose() * center;
    let radius2 = k as f64 * (1.0f64 + 1e-6).powi(2);
    let node_cap = (64.0 * budget + 1e6) as u64;
    let nodes = AtomicU64::new(0);

    let top = k - 1;
    let (lo, hi) = level_range(&t, &target, &[0; 4], top, radius2);
    let search = Search { t: &t, target: &target, radius2, k };
    let chunks: Vec<Result<Vec<BoxPoint>>> = (lo..=hi)
        .into_par_iter()
        .map(|y_top| {
            let mut y = [0i64; 4];
            y[top] = y_top;
            let mut found = Vec::new();
            let mut local_nodes = 0u64;
            search.descend(&mut y, top, &mut |y: &[i64]| {
                local_nodes += 1;
                let c = combine(&u, &y[..k])?;
                let p = lat.point(&c);
                let point: Vec<f64> = p.iter().zip(shift).map(|(a, g)| a - g).collect();
                if point.iter().zip(s).all(|(x, si)| x.abs() <= si * (1.0 + MEMBERSHIP_TOL)) {
                    found.push(BoxPoint { coeffs: c, point });
                }
                Ok(())
            })?;
            let total = nodes.fetch_add(local_nodes, Ordering::Relaxed) + local_nodes;
            if total > node_cap {
                return Err(Error::BudgetExceeded { estimated: total as f64, budget: node_cap as f64 });
            }
            Ok(found)
        })
        .collect();
    let mut out = Vec::new();
    for c in chunks {
        out.extend(c?);
    }
    out.sort_by(|a, b| {
        a.point
            .iter()
            .zip(&b.point)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| a.coeffs.cmp(&b.coeffs))
    });
    Ok(out)
}

struct Search<'a> {
    t: &'a DMatrix<f64>,
    target: &'a DVector<f64>,
    radius2: f64,
    k: usize,
}

impl Search<'_> {
    fn descend(&self, y: &mut [i64; 4], level: usize, visit: &mut dyn FnMut(&[i64]) -> Result<()>) -> Result<()> {
        if level == 0 {
            return visit(&y[..self.k]);
        }
        let next = level - 1;
        let (lo, hi) = level_range(self.t, self.target, y, next, self.radius2);
        for v in lo..=hi {
            y[next] = v;
            self.descend(y, next, visit)?;
        }
        y[next] = 0;
        Ok(())
    }
}

/// Admissible integer range for `y[level]` given `y[level+1..]`.
fn level_range(t: &DMatrix<f64>, target: &DVector<f64>, y: &[i64; 4], level: usize, radius2: f64) -> (i64, i64) {
    let k = t.nrows();
    let mut used = 0.0;
    for j in level + 1..k {
        let mut r = -target[j];
        for l in j..k {
            r += t[(j, l)] * y[l] as f64;
        }
        used += r * r;
    }
    let rem = radius2 - used;
    if rem < 0.0 {
        return (1, 0);
    }
    let mut shift = target[level];
    for l in level + 1..k {
        shift -= t[(level, l)] * y[l] as f64;
    }
    let diag = t[(level, level)];
    let center = shift / diag;
    let half = rem.sqrt() / diag.abs();
    ((center - half).ceil() as i64, (center + half).floor() as i64)
}

fn combine(u: &[Vec<i64>], y: &[i64]) -> Result<Vec<i64>> {
    let k = y.len();
    let overflow = || Error::InvalidInput("coefficient overflow".into());
    let mut c = vec![0i64; k];
    for (j, col) in u.iter().enumerate() {
        if y[j] == 0 {
            continue;
        }
        for i in 0..k {
            let term = col[i].checked_mul(y[j]).ok_or_else(overflow)?;
            c[i] = c[i].checked_add(term).ok_or_else(overflow)?;
        }
    }
    Ok(c)
}

/// LLL reduction of the basis scaled by `1 / s` coordinate-wise. Returns the
/// unimodular transform (columns) and the reduced scaled vectors.
pub fn lll_reduce(lat: &Lattice, s: &[f64]) -> Result<(Vec<Vec<i64>>, Vec<Vec<f64>>)> {
    let k = lat.k();
    let scaled = |c: &[i64]| -> Vec<f64> { lat.point(c).iter().zip(s).map(|(x, si)| x / si).collect() };
    let mut u: Vec<Vec<i64>> = (0..k).map(|j| (0..k).map(|i| i64::from(i == j)).collect()).collect();
    let mut b: Vec<Vec<f64>> = u.iter().map(|c| scaled(c)).collect();
    let overflow = || Error::InvalidInput("LLL transform overflow".into());
    let mut idx = 1;
    let mut steps = 0;
    while idx < k && steps < LLL_MAX_STEPS {
        steps += 1;
        for j in (0..idx).rev() {
            let (_, mu) = gram_schmidt(&b);
            let q = mu[idx][j].round();
            if q != 0.0 {
                if q.abs() > 9e15 {
                    return Err(overflow());
                }
                let qi = q as i64;
                let (head, tail) = u.split_at_mut(idx);
                for i in 0..k {
                    let t = head[j][i].checked_mul(qi).ok_or_else(overflow)?;
                    tail[0][i] = tail[0][i].checked_sub(t).ok_or_else(overflow)?;
                }
                b[idx] = scaled(&u[idx]);
            }
        }
        let (bstar, mu) = gram_schmidt(&b);
        let n_cur = dot(&bstar[idx], &bstar[idx]);
        let n_prev = dot(&bstar[idx - 1], &bstar[idx - 1]);
        if n_cur >= (LLL_DELTA - mu[idx][idx - 1].powi(2)) * n_prev {
            idx += 1;
        } else {
            u.swap(idx, idx - 1);
            b.swap(idx, idx - 1);
            idx = (idx - 1).max(1);
        }
    }
    Ok((u, b))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram_schmidt(b: &[Vec<f64>]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let k = b.len();
    let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut mu = vec![vec![0.0; k]; k];
    for i in 0..k {
        let mut v = b[i].clone();
        for j in 0..i {
            let nj = dot(&bstar[j], &bstar[j]);
            mu[i][j] = dot(&b[i], &bstar[j]) / nj;
            for (x, y) in v.iter_mut().zip(&bstar[j]) {
                *x -= mu[i][j] * y;
            }
        }
        bstar.push(v);
    }
    (bstar, mu)
}

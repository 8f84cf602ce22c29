//! Box norms, successive minima and the polar-body checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::enumerate::{enumerate_box, lll_reduce, BoxPoint};
use super::{Lattice, SymBox, MEMBERSHIP_TOL};
use crate::error::Result;

/// `max_i |p_i| / s_i`: the gauge of the box `P_s`.
pub fn box_norm(p: &[f64], s: &[f64]) -> f64 {
    p.iter().zip(s).fold(0.0, |m, (x, si)| m.max(x.abs() / si))
}

/// `sum_i s_i |p_i|`: the gauge of the polar body `P_s^*`.
pub fn dual_body_norm(p: &[f64], s: &[f64]) -> f64 {
    p.iter().zip(s).map(|(x, si)| x.abs() * si).sum()
}

pub fn in_box(s: &[f64], p: &[f64]) -> bool {
    p.iter().zip(s).all(|(x, si)| x.abs() <= si * (1.0 + MEMBERSHIP_TOL))
}

/// Membership in the polar body `{x : <x, y> <= 1 for all y in P_s}`, tested
/// against every corner of `P_s` (the support function of a box is attained at
/// a corner).
pub fn in_polar_box(s: &[f64], x: &[f64]) -> bool {
    let k = s.len();
    (0u32..1 << k).all(|mask| {
        let v: f64 = (0..k)
            .map(|i| if mask >> i & 1 == 1 { s[i] * x[i] } else { -s[i] * x[i] })
            .sum();
        v <= 1.0 + MEMBERSHIP_TOL
    })
}

/// `3^k k! / 2`: any lattice of determinant 1 with all successive minima of a
/// box `C` at most 1 has `#(C ∩ L) <= C_k vol(C)`.
pub fn blichfeldt_constant(k: usize) -> f64 {
    3f64.powi(k as i32) * (1..=k).map(|i| i as f64).product::<f64>() / 2.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Minimum {
    pub value: f64,
    pub point: Vec<f64>,
    pub coeffs: Vec<i64>,
}

/// Sign-normalized (first nonzero coordinate positive) candidates sorted by
/// norm, then lexicographically.
fn sorted_candidates(pts: Vec<BoxPoint>, norm: impl Fn(&[f64]) -> f64) -> Vec<Minimum> {
    let mut out: Vec<Minimum> = pts
        .into_iter()
        .filter(|p| p.coeffs.iter().any(|&c| c != 0))
        .map(|p| {
            let flip = p.point.iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0);
            let (point, coeffs) = if flip {
                (p.point.iter().map(|x| -x).collect(), p.coeffs.iter().map(|c| -c).collect())
            } else {
                (p.point, p.coeffs)
            };
            Minimum { value: norm(&point), point, coeffs }
        })
        .collect();
    out.sort_by(|a, b| {
        a.value.total_cmp(&b.value).then_with(|| {
            a.point
                .iter()
                .zip(&b.point)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    out.dedup_by(|a, b| a.coeffs == b.coeffs);
    out
}

/// Reduced-basis norms: every one is an upper bound on the first minimum and
/// their maximum bounds the last.
fn reduced_norms(lat: &Lattice, s: &[f64], norm: &dyn Fn(&[f64]) -> f64) -> Result<Vec<f64>> {
    let (u, _) = lll_reduce(lat, s)?;
    Ok(u.iter().map(|c| norm(&lat.point(c))).collect())
}

/// `lambda_1(L, P_s)` with a witness.
pub fn shortest_in_box(lat: &Lattice, bx: &SymBox) -> Result<Minimum> {
    let s = bx.radii();
    let norm = |p: &[f64]| box_norm(p, s);
    let upper = reduced_norms(lat, s, &norm)?.into_iter().fold(f64::INFINITY, f64::min);
    let pts = enumerate_box(lat, &bx.scaled(upper * (1.0 + 1e-9))?, &vec![0.0; lat.k()])?;
    Ok(sorted_candidates(pts, norm).into_iter().next().expect("reduced basis vector lies in the box"))
}

/// All `k` successive minima of `L` with respect to `P_s`, with witnesses.
pub fn successive_minima(lat: &Lattice, bx: &SymBox) -> Result<Vec<Minimum>> {
    let s = bx.radii();
    let k = lat.k();
    let norm = |p: &[f64]| box_norm(p, s);
    let upper = reduced_norms(lat, s, &norm)?.into_iter().fold(0.0, f64::max);
    let pts = enumerate_box(lat, &bx.scaled(upper * (1.0 + 1e-9))?, &vec![0.0; k])?;
    let mut chosen: Vec<Minimum> = Vec::with_capacity(k);
    for cand in sorted_candidates(pts, norm) {
        let mut rows: Vec<Vec<i64>> = chosen.iter().map(|m| m.coeffs.clone()).collect();
        rows.push(cand.coeffs.clone());
        if rank(&rows) == rows.len() {
            chosen.push(cand);
            if chosen.len() == k {
                break;
            }
        }
    }
    Ok(chosen)
}

/// `lambda_1(L, P_s^*)`: the smallest `t` with a nonzero point in `t P_s^*`.
pub fn shortest_in_dual_body(lat: &Lattice, s: &[f64]) -> Result<Minimum> {
    let inv: Vec<f64> = s.iter().map(|x| 1.0 / x).collect();
    let norm = |p: &[f64]| dual_body_norm(p, s);
    let upper = reduced_norms(lat, &inv, &norm)?.into_iter().fold(f64::INFINITY, f64::min);
    // t P_s^* sits inside t P_{1/s}
    let outer = SymBox::new(inv.iter().map(|x| x * upper * (1.0 + 1e-9)).collect())?;
    let pts = enumerate_box(lat, &outer, &vec![0.0; lat.k()])?;
    Ok(sorted_candidates(pts, norm).into_iter().next().expect("reduced basis vector lies in the body"))
}

/// Exact rank of integer row vectors.
fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

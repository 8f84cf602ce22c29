//! Poisson-dual evaluation
//! `D = vol * sum_{l in L* \ 0} e(l . g) w_k^(N l_k) prod_i w_i^(rho_i l_i)`
//! truncated to a box with a certified bound on the discarded mass.
//!
//! In scaled coordinates `z = (rho_1 l_1, ..., rho_d l_d, N l_k)` the scaled
//! dual lattice has covolume `vol`, and every summand is at most
//! `E(z) = prod_i env_i(z_i)` where `env_i` is the monotone envelope of the
//! transform. Let `h_i` be the half-widths of the fundamental cell spanned by a
//! reduced basis. A lattice point `z` satisfies `E(z) <= E'(y)` for every `y`
//! in its cell, with `E'(y) = prod_i env_i((|y_i| - h_i)_+)`. Summing over the
//! points outside the box `|z_i| <= 2 h_i + u` therefore costs at most
//! `vol^{-1}` times the integral of `E'` over `{y : some |y_i| > h_i + u}`,
//! which factors coordinate-wise into closed-form envelope integrals.

use super::{check_shapes, DiscrepancyResult, Method, TestBox};
use crate::error::{Error, Result};
use crate::lattice::{enumerate_box_with_budget, lll_reduce, Lattice, SymBox};
use crate::sum::CompensatedSum;
use crate::weights::WeightSystem;

pub const DEFAULT_TOL: f64 = 1e-10;
/// Cap on the expected number of dual terms.
pub const DUAL_BUDGET: f64 = 2e7;

#[derive(Clone, Debug)]
pub struct DualPlan {
    pub dual: Lattice,
    /// `(rho_1, ..., rho_d, N)`.
    pub scale: Vec<f64>,
    /// Fundamental-cell half-widths in scaled coordinates.
    pub half_widths: Vec<f64>,
    pub margin: f64,
    /// Retained region `|z_i| <= half_box[i]` in scaled coordinates.
    pub half_box: Vec<f64>,
    pub tail_bound: f64,
    pub estimated_terms: f64,
}

/// `prod T_i - prod (T_i - O_i)` without cancellation.
fn tail_from(total: &[f64], outer: &[f64]) -> f64 {
    let k = total.len();
    let mut acc = 0.0;
    for i in 0..k {
        let mut t = outer[i];
        for j in 0..i {
            t *= total[j] - outer[j];
        }
        for j in i + 1..k {
            t *= total[j];
        }
        acc += t;
    }
    acc
}

pub fn dual_plan(lat: &Lattice, w: &WeightSystem, bx: &TestBox, n: f64, tol: f64) -> Result<DualPlan> {
    check_shapes(lat, w, bx, n)?;
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol} must be positive")));
    }
    let k = lat.k();
    let dual = lat.dual()?;
    let mut scale = bx.rho.clone();
    scale.push(n);
    let inv: Vec<f64> = scale.iter().map(|x| 1.0 / x).collect();
    let (_, reduced) = lll_reduce(&dual, &inv)?;
    let half_widths: Vec<f64> = (0..k).map(|i| 0.5 * reduced.iter().map(|b| b[i].abs()).sum::<f64>()).collect();
    let totals: Vec<f64> = (0..k).map(|i| w.component(i).widened_envelope_mass(half_widths[i])).collect();
    let tail = |u: f64| {
        let outer: Vec<f64> = (0..k).map(|i| w.component(i).widened_envelope_outer(u)).collect();
        tail_from(&totals, &outer)
    };
    let margin = if tail(0.0) <= tol {
        0.0
    } else {
        let mut hi = 1.0;
        while tail(hi) > tol {
            hi *= 2.0;
            if hi > 1e12 {
                return Err(Error::ToleranceTooSmall { tol, estimated: f64::INFINITY });
            }
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if tail(mid) > tol {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    };
    let half_box: Vec<f64> = half_widths.iter().map(|h| 2.0 * h + margin).collect();
    let vol = bx.vol(n);
    let estimated_terms = half_box.iter().map(|a| 2.0 * a).product::<f64>() / vol;
    if estimated_terms > DUAL_BUDGET {
        return Err(Error::ToleranceTooSmall { tol, estimated: estimated_terms });
    }
    Ok(DualPlan { dual, scale, half_widths, margin, half_box, tail_bound: tail(margin), estimated_terms })
}

fn evaluate(lat: &Lattice, w: &WeightSystem, bx: &TestBox, n: f64, tol: f64, phases: bool) -> Result<DiscrepancyResult> {
    let plan = dual_plan(lat, w, bx, n, tol)?;
    let k = lat.k();
    let radii: Vec<f64> = plan.half_box.iter().zip(&plan.scale).map(|(a, s)| a / s).collect();
    let pts = enumerate_box_with_budget(&plan.dual, &SymBox::new(radii)?, &vec![0.0; k], 4.0 * DUAL_BUDGET)?;
    let mut acc = CompensatedSum::new();
    let mut terms = 0u64;
    for p in &pts {
        if p.coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let mut v = 1.0;
        for i in 0..k {
            v *= w.component(i).fourier(plan.scale[i] * p.point[i]);
        }
        if phases && !bx.is_centered() {
            let arg: f64 = (0..k - 1).map(|i| p.point[i] * bx.gamma[i]).sum();
            v *= (2.0 * std::f64::consts::PI * arg).cos();
        }
        if v != 0.0 {
            acc.add(v);
            terms += 1;
        }
    }
    let vol = bx.vol(n);
    Ok(DiscrepancyResult {
        value: vol * acc.value(),
        method: if phases { Method::Dual } else { Method::DualMajorant },
        tail_bound: plan.tail_bound,
        terms,
        expected: w.expect_constant() * vol,
        rounding: vol * (acc.rounding_estimate() + 8.0 * f64::EPSILON * acc.abs_sum()),
    })
}

/// Dual sum with phases `e(l . g)`; equals the direct value up to `tail_bound`.
pub fn dual_discrepancy(lat: &Lattice, w: &WeightSystem, bx: &TestBox, n: f64, tol: f64) -> Result<DiscrepancyResult> {
    evaluate(lat, w, bx, n, tol, true)
}

/// Dual sum with all phases set to 1: `|D| <= value + tail_bound` for any center.
pub fn dual_majorant(lat: &Lattice, w: &WeightSystem, bx: &TestBox, n: f64, tol: f64) -> Result<DiscrepancyResult> {
    evaluate(lat, w, bx, n, tol, false)
}

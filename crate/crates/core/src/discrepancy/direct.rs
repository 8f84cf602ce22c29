//! Direct evaluation `sum_l w_k(l_k / N) prod_i w_i((l_i - g_i) / rho_i) - c(w) vol`.

use rayon::prelude::*;

use super::{check_shapes, DiscrepancyResult, Method, TestBox};
use crate::dd::Dd;
use crate::error::Result;
use crate::lattice::{enumerate_box, Lattice, SymBox};
use crate::sum::CompensatedSum;
use crate::weights::WeightSystem;

pub fn direct_discrepancy(lat: &Lattice, w: &WeightSystem, bx: &TestBox, n: f64) -> Result<DiscrepancyResult> {
    check_shapes(lat, w, bx, n)?;
    let (sum, terms) = match lat.dani_alpha() {
        Some(alpha) => dani_sum(alpha, w, bx, n),
        None => generic_sum(lat, w, bx, n)?,
    };
    let expected = w.expect_constant() * bx.vol(n);
    let mut total = sum;
    total.add(-expected);
    Ok(DiscrepancyResult {
        value: total.value(),
        method: Method::Direct,
        tail_bound: 0.0,
        terms,
        expected,
        rounding: total.rounding_estimate() + 4.0 * f64::EPSILON * sum.abs_sum(),
    })
}

/// Dani lattices: the points are `(a + n alpha, n)`, so for each `n` the
/// coordinate sums factor and only `a` within one of `-(n alpha - gamma)`
/// can reach the support (its radius `m s rho / 2 <= 2 rho < 1`).
fn dani_sum(alpha: &[Dd], w: &WeightSystem, bx: &TestBox, n: f64) -> (CompensatedSum, u64) {
    let d = bx.d();
    let last = w.component(d);
    let reach = (last.support_radius() * n).floor() as i64;
    let gamma: Vec<Dd> = bx.gamma.iter().map(|&g| Dd::from_f64(g)).collect();
    let chunk = 4096i64;
    let starts: Vec<i64> = (-reach..=reach).step_by(chunk as usize).collect();
    let parts: Vec<(CompensatedSum, u64)> = starts
        .par_iter()
        .map(|&start| {
            let mut acc = CompensatedSum::new();
            let mut terms = 0u64;
            for t in start..(start + chunk).min(reach + 1) {
                let horizon_w = last.eval(t as f64 / n);
                if horizon_w == 0.0 {
                    continue;
                }
                let mut prod = horizon_w;
                for i in 0..d {
                    let y = (alpha[i].mul_i64(t) - gamma[i]).signed_frac().to_f64();
                    let wi = w.component(i);
                    let r = bx.rho[i];
                    let s = wi.eval(y / r) + wi.eval((y - 1.0) / r) + wi.eval((y + 1.0) / r);
                    prod *= s;
                    if prod == 0.0 {
                        break;
                    }
                }
                if prod != 0.0 {
                    acc.add(prod);
                    terms += 1;
                }
            }
            (acc, terms)
        })
        .collect();
    let mut total = CompensatedSum::new();
    let mut terms = 0;
    for (p, t) in &parts {
        total.merge(p);
        terms += t;
    }
    (total, terms)
}

fn generic_sum(lat: &Lattice, w: &WeightSystem, bx: &TestBox, n: f64) -> Result<(CompensatedSum, u64)> {
    let d = bx.d();
    let mut radii: Vec<f64> = (0..d).map(|i| w.component(i).support_radius() * bx.rho[i]).collect();
    radii.push(w.component(d).support_radius() * n);
    let mut shift = bx.gamma.clone();
    shift.push(0.0);
    let pts = enumerate_box(lat, &SymBox::new(radii)?, &shift)?;
    let mut acc = CompensatedSum::new();
    let mut terms = 0;
    for p in &pts {
        let mut v = w.component(d).eval(p.point[d] / n);
        for i in 0..d {
            v *= w.component(i).eval(p.point[i] / bx.rho[i]);
        }
        if v != 0.0 {
            acc.add(v);
            terms += 1;
        }
    }
    Ok((acc, terms))
}

//! Lower-bound witnesses: a dual point `(l, l_k)` with `H(l) |l_k|` small forces
//! a large discrepancy on the centered box `rho_i = c / (1 + |l_i|)` at horizon
//! `N = floor(c phi(H) H)`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{dual_discrepancy, TestBox};
use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::numbers::{continued_fraction, ApproxRecord, PhiFunction, RealAlgebraic};
use crate::weights::WeightSystem;

/// Grid step of the certified scan for the witness constant.
const C_STEP: f64 = 1e-5;

/// A dual lattice vector split as `(l_1, ..., l_d; l_k)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DualVector {
    pub lambda: Vec<f64>,
    pub lambda_k: f64,
}

impl DualVector {
    /// `prod max(1, |l_i|)`.
    pub fn height(&self) -> f64 {
        self.lambda.iter().map(|x| x.abs().max(1.0)).product()
    }
}

impl From<&ApproxRecord> for DualVector {
    /// For a Dani lattice the dual point `(m, n - m . alpha)` with `n` the
    /// nearest integer has `|l_k| = ||m . alpha||`.
    fn from(r: &ApproxRecord) -> Self {
        DualVector { lambda: r.m.iter().map(|&x| x as f64).collect(), lambda_k: r.error }
    }
}

/// Dual points `(q, q alpha - p)` of `Dani(alpha)` from the convergent
/// denominators `q <= max_height`, with `p` the integer nearest to `q alpha`.
pub fn convergent_duals(alpha: &RealAlgebraic, max_height: f64) -> Result<Vec<DualVector>> {
    let cf = continued_fraction(alpha, 96)?;
    let mut out = Vec::new();
    for (_, q) in cf.convergents() {
        if out.last().is_some_and(|d: &DualVector| BigInt::from(d.lambda[0] as i64) == q) {
            continue;
        }
        let qf = Dd::from_rational(&BigRational::from_integer(q.clone())).to_f64();
        if qf > max_height {
            break;
        }
        let (lo, hi) = alpha.enclosure(q.bits() as u32 + 80);
        let mid = (lo + hi) / BigRational::from_integer(BigInt::from(2));
        let x = mid * BigRational::from_integer(q);
        let err = &x - x.round();
        out.push(DualVector { lambda: vec![qf], lambda_k: Dd::from_rational(&err).to_f64() });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub height: f64,
    pub c: f64,
    pub horizon: f64,
    pub bx: TestBox,
    /// `vol(B; N) c^k`.
    pub lower_bound: f64,
    pub measured: f64,
    pub tail_bound: f64,
    /// `measured >= lower_bound - tail_bound`.
    pub holds: bool,
}

/// Largest `c` on a `1e-5` grid, below `1/2`, with `w_i^(x) >= c` for
/// `|x| <= c` and every component. Each transform decreases on `[0, 1/s]`, and
/// the grid value is lowered by `L * step` with `L = s^2 m pi / 2` bounding the
/// derivative (`|sinc'| <= pi / 2`).
pub fn witness_constant(w: &WeightSystem) -> f64 {
    let mut best = 0.0;
    let mut j = 1u32;
    loop {
        let c = j as f64 * C_STEP;
        if c >= 0.5 {
            break;
        }
        let ok = w.components().iter().all(|wi| {
            let s = wi.scale_f64();
            let lip = s * s * wi.order() as f64 * PI / 2.0;
            c < 1.0 / s && wi.fourier(c) - lip * C_STEP >= c
        });
        if !ok {
            break;
        }
        best = c;
        j += 1;
    }
    best
}

pub fn lower_bound_witness(lat: &Lattice, w: &WeightSystem, approx: &DualVector, phi: &PhiFunction, tol: f64) -> Result<Witness> {
    let k = lat.k();
    if approx.lambda.len() + 1 != k {
        return Err(Error::InvalidInput(format!("dual vector has {} coordinates, lattice k = {k}", approx.lambda.len() + 1)));
    }
    let h = approx.height();
    let quality = h * approx.lambda_k.abs();
    if !(quality < 1.0 / phi.eval(h)) {
        return Err(Error::WitnessRejected(format!(
            "H |l_k| = {quality:e} is not below 1/phi(H) = {:e}",
            1.0 / phi.eval(h)
        )));
    }
    let c = witness_constant(w);
    let horizon = (c * phi.eval(h) * h).floor();
    if horizon < 1.0 {
        return Err(Error::WitnessTooSmall(format!("N = floor(c phi(H) H) = {horizon} at H = {h}")));
    }
    let rho: Vec<f64> = approx.lambda.iter().map(|x| c / (1.0 + x.abs())).collect();
    if rho.iter().any(|&r| r >= 0.5) {
        return Err(Error::WitnessTooSmall("radius reached 1/2".into()));
    }
    let bx = TestBox::centered(rho)?;
    let lower_bound = bx.vol(horizon) * c.powi(k as i32);
    let r = dual_discrepancy(lat, w, &bx, horizon, tol)?;
    Ok(Witness {
        height: h,
        c,
        horizon,
        lower_bound,
        measured: r.value,
        tail_bound: r.tail_bound,
        holds: r.value >= lower_bound - r.tail_bound,
        bx,
    })
}

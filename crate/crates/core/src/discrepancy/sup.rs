//! Lower estimate of `sup_B |D(B; N)|` over a dyadic grid of radii.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{direct_discrepancy, dual_discrepancy, dual_plan, DiscrepancyResult, TestBox};
use crate::error::Result;
use crate::lattice::Lattice;
use crate::weights::WeightSystem;

/// Largest grid radius; the grid is `RHO_TOP * 2^-j`, `j = 0..=depth`.
pub const RHO_TOP: f64 = 0.499;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanGrid {
    pub depth: u32,
    /// Number of random nonzero centers evaluated per radius cell.
    pub gamma_samples: usize,
    pub seed: u64,
    pub tol: f64,
}

impl ScanGrid {
    pub fn new(depth: u32) -> Self {
        ScanGrid { depth, gamma_samples: 0, seed: 1, tol: super::DEFAULT_TOL }
    }

    /// Depth reaching boxes of volume about 0.1 at horizon `n` in dimension `d`.
    pub fn depth_for(n: f64, d: usize) -> u32 {
        ((RHO_TOP.powi(d as i32) * n / 0.1).log2() / d as f64).ceil().max(0.0) as u32
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CellValue {
    pub exponents: Vec<u32>,
    pub bx: TestBox,
    pub result: DiscrepancyResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupEstimate {
    /// `max |D|` over the grid; a lower estimate of the supremum.
    pub estimate: f64,
    pub argmax: CellValue,
    pub grid: ScanGrid,
    pub horizon: f64,
    pub cells: Vec<CellValue>,
}

/// Evaluates every radius cell at the center (with whichever exact engine is
/// cheaper) and at `gamma_samples` seeded random centers (direct engine).
/// Ties in `|D|` go to the smallest maximal exponent, then lexicographically
/// smallest radii, then the centered box.
pub fn sup_discrepancy(lat: &Lattice, w: &WeightSystem, n: f64, grid: &ScanGrid) -> Result<SupEstimate> {
    let d = lat.k() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    let gammas: Vec<Vec<f64>> = (0..grid.gamma_samples)
        .map(|_| (0..d).map(|_| rng.gen_range(-0.5..0.5)).collect())
        .collect();
    let mut cells_exp: Vec<Vec<u32>> = vec![vec![]];
    for _ in 0..d {
        cells_exp = cells_exp
            .into_iter()
            .flat_map(|e| {
                (0..=grid.depth).map(move |j| {
                    let mut e = e.clone();
                    e.push(j);
                    e
                })
            })
            .collect();
    }
    let evaluated: Vec<Result<Vec<CellValue>>> = cells_exp
        .par_iter()
        .map(|exps| {
            let rho: Vec<f64> = exps.iter().map(|&j| RHO_TOP * 0.5f64.powi(j as i32)).collect();
            let mut out = Vec::with_capacity(1 + gammas.len());
            let centered = TestBox::centered(rho.clone())?;
            out.push(CellValue { exponents: exps.clone(), result: centered_value(lat, w, &centered, n, grid.tol)?, bx: centered });
            for g in &gammas {
                let bx = TestBox::new(g.clone(), rho.clone())?;
                out.push(CellValue { exponents: exps.clone(), result: direct_discrepancy(lat, w, &bx, n)?, bx });
            }
            Ok(out)
        })
        .collect();
    let mut cells = Vec::new();
    for c in evaluated {
        cells.extend(c?);
    }
    let key = |c: &CellValue| (c.exponents.iter().copied().max().unwrap_or(0), c.bx.rho.clone());
    let mut best: Option<&CellValue> = None;
    for c in &cells {
        let better = match best {
            None => true,
            Some(b) => {
                let (x, y) = (c.result.value.abs(), b.result.value.abs());
                x > y || (x == y && key(c) < key(b))
            }
        };
        if better {
            best = Some(c);
        }
    }
    let argmax = best.expect("grid is nonempty").clone();
    Ok(SupEstimate { estimate: argmax.result.value.abs(), argmax, grid: grid.clone(), horizon: n, cells })
}

/// Direct or dual, whichever is expected to touch fewer lattice points.
fn centered_value(lat: &Lattice, w: &WeightSystem, bx: &TestBox, n: f64, tol: f64) -> Result<DiscrepancyResult> {
    let d = bx.d();
    let direct_cost = if lat.dani_alpha().is_some() {
        2.0 * w.component(d).support_radius() * n
    } else {
        let mut c = 2.0 * w.component(d).support_radius() * n;
        for i in 0..d {
            c *= 2.0 * w.component(i).support_radius() * bx.rho[i];
        }
        c.max(1.0) * 8.0
    };
    match dual_plan(lat, w, bx, n, tol) {
        Ok(plan) if plan.estimated_terms < direct_cost => dual_discrepancy(lat, w, bx, n, tol),
        _ => direct_discrepancy(lat, w, bx, n),
    }
}

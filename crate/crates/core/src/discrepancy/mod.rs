//! Smooth discrepancy: direct and Poisson-dual engines, the sup scan,
//! lower-bound witnesses and the classical star discrepancy baseline.

mod classical;
mod direct;
mod dual;
mod sup;
mod witness;

pub use classical::{classical_star_discrepancy, slope_per_decade};
pub use direct::direct_discrepancy;
pub use dual::{dual_discrepancy, dual_majorant, dual_plan, DualPlan, DEFAULT_TOL};
pub use sup::{sup_discrepancy, CellValue, ScanGrid, SupEstimate};
pub use witness::{convergent_duals, lower_bound_witness, witness_constant, DualVector, Witness};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::weights::WeightSystem;

/// Center `gamma` and radii `rho` of a test box; with a horizon `N` it
/// describes `prod_i [gamma_i - rho_i, gamma_i + rho_i] x [-N, N]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TestBox {
    pub gamma: Vec<f64>,
    pub rho: Vec<f64>,
}

impl TestBox {
    pub fn new(gamma: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        if gamma.len() != rho.len() || rho.is_empty() {
            return Err(Error::InvalidInput(format!(
                "gamma has {} entries, rho has {}",
                gamma.len(),
                rho.len()
            )));
        }
        if let Some(r) = rho.iter().find(|&&r| !(r > 0.0 && r < 0.5)) {
            return Err(Error::InvalidInput(format!("radius {r} not in (0, 1/2)")));
        }
        if gamma.iter().any(|g| !g.is_finite()) {
            return Err(Error::InvalidInput("non-finite center".into()));
        }
        Ok(TestBox { gamma, rho })
    }

    pub fn centered(rho: Vec<f64>) -> Result<Self> {
        Self::new(vec![0.0; rho.len()], rho)
    }

    pub fn d(&self) -> usize {
        self.rho.len()
    }

    /// `rho_1 ... rho_d N`.
    pub fn vol(&self, n: f64) -> f64 {
        self.rho.iter().product::<f64>() * n
    }

    pub fn is_centered(&self) -> bool {
        self.gamma.iter().all(|&g| g == 0.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Direct,
    Dual,
    /// Dual sum with every phase replaced by 1: an upper bound for `|D|`.
    DualMajorant,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::Dual => "dual",
            Method::DualMajorant => "dual-majorant",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyResult {
    pub value: f64,
    pub method: Method,
    /// Certified bound on the discarded dual mass; zero for the direct engine.
    pub tail_bound: f64,
    pub terms: u64,
    /// `c(w) vol(B; N)`.
    pub expected: f64,
    /// Estimated floating-point error of `value`.
    pub rounding: f64,
}

pub(crate) fn check_shapes(lat: &Lattice, w: &WeightSystem, bx: &TestBox, n: f64) -> Result<()> {
    let k = lat.k();
    if w.k() != k || bx.d() + 1 != k {
        return Err(Error::InvalidInput(format!(
            "dimension mismatch: lattice k = {k}, weights k = {}, box d = {}",
            w.k(),
            bx.d()
        )));
    }
    if !(n >= 1.0) || !n.is_finite() {
        return Err(Error::InvalidInput(format!("horizon {n} must be >= 1")));
    }
    if !lat.is_unimodular() {
        return Err(Error::NotUnimodular(lat.det_abs()));
    }
    Ok(())
}

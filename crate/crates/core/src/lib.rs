//! Smooth discrepancy of Kronecker sequences and unimodular lattices.
//!
//! The crate evaluates the smooth discrepancy
//! `D(B; N) = sum_{l in L} w_k(l_k / N) prod_i w_i((l_i - g_i) / r_i) - C(w) vol(B; N)`
//! of a lattice `L` (a Kronecker sequence is the special case of a Dani lattice)
//! by two independent routes: a direct lattice sum and a Poisson-dual sum over the
//! dual lattice with a certified truncation bound. Around the two engines sit the
//! diophantine tools needed to compare the discrepancy with multiplicative
//! approximation rates: continued fractions, multiplicative heights, rate fitting,
//! and geometry-of-numbers checks.
//!
//! Module map:
//! - [`weights`]: B-spline smoothing weights with closed-form Fourier transforms.
//! - [`numbers`]: exact real algebraic inputs, continued fractions, badness scans,
//!   rate functions and Littlewood trajectories.
//! - [`lattice`]: lattices, duals, Dani and Minkowski constructions, box enumeration,
//!   successive minima and Bohr sets.
//! - [`discrepancy`]: direct and dual engines, the sup scan, lower-bound witnesses and
//!   the classical star discrepancy baseline.
//! - [`frozen`]: regression constants observed on the reference sweeps.

pub mod dd;
pub mod discrepancy;
pub mod error;
pub mod frozen;
pub mod lattice;
pub mod numbers;
pub mod sum;
pub mod weights;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

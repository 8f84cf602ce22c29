//! Diophantine utilities: exact real inputs, continued fractions, multiplicative
//! badness, rate functions and Littlewood trajectories.

pub mod badness;
pub mod cf;
pub mod littlewood;
pub mod phi;
pub mod real;

pub use badness::{mult_badness, mult_height, ApproxRecord, BadnessScan, ParetoFront};
pub use cf::{continued_fraction, ContinuedFraction};
pub use littlewood::{littlewood_trajectory, LittlewoodRecord, Trajectory};
pub use phi::{fit_phi, PhiFit, PhiFunction};
pub use real::{CubicRoot, RealAlgebraic};

//! Regression constants observed on the reference sweeps.
//!
//! Each value was produced by the library itself on a first run and then
//! pinned here. The comment above each constant names the sweep; rerunning the
//! sweep must reproduce it (the acceptance target checks the ones it covers).

/// Worst `|m| ||m alpha||` for the golden ratio over `|m| <= 10^6` (and over
/// `|m| <= 10^5`): attained at `m = 1`, i.e. `(3 - sqrt 5) / 2`.
pub const GOLDEN_WORST_QUALITY: f64 = 0.381_966_011_250_105_15;

/// `1 / GOLDEN_WORST_QUALITY`, the constant `phi` fitted to the golden scan.
pub const GOLDEN_PHI: f64 = 2.618_033_988_749_895;

/// Worst record of `mult_badness((theta, theta^2), 200)`: `m = (18, 1)`.
pub const CUBIC_PAIR_WORST_M: [i64; 2] = [18, 1];
pub const CUBIC_PAIR_WORST_QUALITY: f64 = 0.010_637_982_032_009_226;

/// `fit_phi` on the cubic-pair running minima (heights 1, 2, 4, 18 for
/// `M <= 1000`): `LogPower { c, a = 2, b = 1 }`.
pub const CUBIC_PAIR_FIT: (f64, f64, f64) = (10.767_259_420_985_583, 2.0, 1.0);

/// Max of `n log n ||n theta|| ||n theta^2||` over the records up to
/// `n = 10^6`; attained at `n = 5049`.
pub const PECK_BOUND: f64 = 68.300_309_426_396_51;

/// Sup scan of `Dani(golden)`, standard weight, `ScanGrid::depth_for(N, 1)`
/// with four inhomogeneous samples, `N = 10^2 .. 10^6`.
pub const GOLDEN_SUP: [f64; 5] = [
    0.259_184_027_777_777_8,
    0.275_427_517_361_111_15,
    0.268_659_396_701_388_94,
    0.260_199_245_862_016_26,
    0.276_062_028_655_592_15,
];

/// Largest entry of [`GOLDEN_SUP`].
pub const GOLDEN_SUP_BOUND: f64 = 0.276_062_028_655_592_15;

/// Sup scan of `minkowski:cubic:7`, standard weight, depth
/// `min(depth_for(N, 2), 8)`, `N = 10^2 .. 10^5`.
pub const CUBIC7_SUP: [f64; 4] = [
    0.137_563_054_042_198_12,
    0.148_362_784_972_033_4,
    0.155_117_359_398_006_22,
    0.068_763_924_661_162_34,
];

pub const CUBIC7_SUP_BOUND: f64 = 0.155_117_359_398_006_22;

/// Worst `#B / vol(B)` over the 50-configuration Bohr sweep (seed 5) on
/// `Dani(golden)` with `phi = GOLDEN_PHI` and `minkowski:cubic:7` with
/// `phi = 7`, gated on `rho_1 ... rho_d N >= phi(L(N))`.
pub const BOHR_RATIO_BOUND: f64 = 1.036_085_776_996_169_3;

/// Max of `D*_N / log N` for the golden Kronecker sequence over
/// `N = round(10^(i/4))`, `i = 4 .. 16`.
pub const CLASSICAL_LOG_CONSTANT: f64 = 0.434_350_644_202_357_25;

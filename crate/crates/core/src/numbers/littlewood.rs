//! Record minima of `n ||n alpha|| ||n beta||`.

use rayon::prelude::*;
use serde::Serialize;

use super::real::RealAlgebraic;
use crate::error::{Error, Result};

pub const MAX_HORIZON: u64 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LittlewoodRecord {
    pub n: u64,
    pub dist_alpha: f64,
    pub dist_beta: f64,
    pub product: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub records: Vec<LittlewoodRecord>,
    pub warnings: Vec<String>,
}

/// Every `n <= horizon` at which `n ||n alpha|| ||n beta||` reaches a new
/// strict minimum (ties keep the smaller `n`).
pub fn littlewood_trajectory(alpha: &RealAlgebraic, beta: &RealAlgebraic, horizon: u64) -> Result<Trajectory> {
    alpha.require_irrational()?;
    beta.require_irrational()?;
    if horizon == 0 || horizon > MAX_HORIZON {
        return Err(Error::InvalidInput(format!("horizon {horizon} not in 1..={MAX_HORIZON}")));
    }
    let a = alpha.to_dd();
    let b = beta.to_dd();
    let ra = alpha.radius();
    let rb = beta.radius();
    let chunk = 1u64 << 16;
    let starts: Vec<u64> = (0..horizon.div_ceil(chunk)).map(|i| 1 + i * chunk).collect();
    let parts: Vec<(Vec<LittlewoodRecord>, Option<u64>)> = starts
        .par_iter()
        .map(|&start| {
            let end = (start + chunk - 1).min(horizon);
            let mut best = f64::INFINITY;
            let mut recs = Vec::new();
            let mut first_warn = None;
            for n in start..=end {
                let da = a.mul_i64(n as i64).dist_to_int();
                let db = b.mul_i64(n as i64).dist_to_int();
                if first_warn.is_none() && ((ra > 0.0 && da < 1e-12) || (rb > 0.0 && db < 1e-12)) {
                    first_warn = Some(n);
                }
                let p = n as f64 * da * db;
                if p < best {
                    best = p;
                    recs.push(LittlewoodRecord { n, dist_alpha: da, dist_beta: db, product: p });
                }
            }
            (recs, first_warn)
        })
        .collect();
    let mut records: Vec<LittlewoodRecord> = Vec::new();
    let mut warnings = Vec::new();
    let mut best = f64::INFINITY;
    for (recs, warn) in parts {
        if let Some(n) = warn {
            if warnings.is_empty() {
                warnings.push(format!(
                    "distance to the nearest integer fell below 1e-12 at n = {n}; the double input cannot resolve it"
                ));
            }
        }
        for r in recs {
            if r.product < best {
                best = r.product;
                records.push(r);
            }
        }
    }
    if ra > 0.0 || rb > 0.0 {
        let lost = horizon as f64 * ra.max(rb);
        if lost > 1e-3 {
            warnings.push(format!("accumulated input uncertainty n*radius reaches {lost:e}"));
        }
    }
    Ok(Trajectory { records, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_pair_matches_direct_scan() {
        let g = RealAlgebraic::golden();
        let t = littlewood_trajectory(&g, &g, 10_000).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let mut best = f64::INFINITY;
        let mut best_n = 0;
        for n in 1..=10_000u64 {
            let x = n as f64 * phi;
            let d = (x - x.round()).abs();
            let p = n as f64 * d * d;
            if p < best - 1e-12 {
                best = p;
                best_n = n;
            }
        }
        let last = t.records.last().unwrap();
        assert_eq!(last.n, best_n);
        assert!((last.product - best).abs() < 1e-9);
        // records land on Fibonacci numbers
        let fib = [1u64, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 987, 1597, 2584, 4181, 6765];
        for r in &t.records {
            assert!(fib.contains(&r.n), "record at non-Fibonacci n = {}", r.n);
        }
        assert!(t.warnings.is_empty());
    }

    #[test]
    fn rejects_rational() {
        let g = RealAlgebraic::golden();
        let third = RealAlgebraic::rational(1, 3).unwrap();
        assert!(matches!(littlewood_trajectory(&g, &third, 100), Err(Error::NotIrrational(_))));
    }

    #[test]
    fn chunked_equals_sequential() {
        let a = RealAlgebraic::cubic7();
        let b: RealAlgebraic = "cubic:7^2".parse().unwrap();
        let t = littlewood_trajectory(&a, &b, 200_000).unwrap();
        let (ad, bd) = (a.to_dd(), b.to_dd());
        let mut best = f64::INFINITY;
        let mut seq = Vec::new();
        for n in 1..=200_000u64 {
            let p = n as f64 * ad.mul_i64(n as i64).dist_to_int() * bd.mul_i64(n as i64).dist_to_int();
            if p < best {
                best = p;
                seq.push(n);
            }
        }
        assert_eq!(t.records.iter().map(|r| r.n).collect::<Vec<_>>(), seq);
    }
}

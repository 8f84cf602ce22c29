//! Classical (sharp-box) star discrepancy of `{n alpha}` in one dimension.

use crate::error::{Error, Result};
use crate::numbers::RealAlgebraic;

pub const MAX_POINTS: u64 = 10_000_000;

/// Unnormalized star discrepancy of `{alpha}, {2 alpha}, ..., {N alpha}`:
/// `max_i max(i - N x_(i), N x_(i) - (i - 1))` over the sorted points.
pub fn classical_star_discrepancy(alpha: &RealAlgebraic, n: u64) -> Result<f64> {
    if n == 0 || n > MAX_POINTS {
        return Err(Error::InvalidInput(format!("N = {n} not in 1..={MAX_POINTS}")));
    }
    let a = alpha.to_dd();
    let mut x: Vec<f64> = (1..=n as i64).map(|t| a.mul_i64(t).frac().to_f64()).collect();
    x.sort_by(f64::total_cmp);
    let nf = n as f64;
    Ok(x.iter()
        .enumerate()
        .map(|(i, &xi)| ((i + 1) as f64 - nf * xi).max(nf * xi - i as f64))
        .fold(0.0, f64::max))
}

/// Least-squares slope of `values` against `log10(ns)`.
pub fn slope_per_decade(ns: &[f64], values: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|n| n.log10()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = values.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(values).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let g = RealAlgebraic::golden();
        let x: f64 = 0.618_033_988_749_894_9;
        let d = classical_star_discrepancy(&g, 1).unwrap();
        assert!((d - x.max(1.0 - x)).abs() < 1e-15);
    }

    #[test]
    fn rational_grows_linearly() {
        let half = RealAlgebraic::rational(1, 2).unwrap();
        let d100 = classical_star_discrepancy(&half, 100).unwrap();
        let d1000 = classical_star_discrepancy(&half, 1000).unwrap();
        assert!((d100 - 50.0).abs() < 1e-9 && (d1000 - 500.0).abs() < 1e-9);
    }

    #[test]
    fn matches_brute_force_sup() {
        // sup over anchored intervals [0, t) and [0, t], checked at every point
        let a = RealAlgebraic::sqrt(2).unwrap();
        let n = 300u64;
        let pts: Vec<f64> = (1..=n).map(|t| (t as f64 * 2f64.sqrt()).fract()).collect();
        let mut brute: f64 = 0.0;
        for &t in &pts {
            let open = pts.iter().filter(|&&x| x < t).count() as f64;
            let closed = pts.iter().filter(|&&x| x <= t).count() as f64;
            brute = brute.max((closed - n as f64 * t).abs()).max((open - n as f64 * t).abs());
        }
        brute = brute.max(n as f64 - pts.iter().fold(0.0f64, |m, &x| m.max(x)) * n as f64);
        let got = classical_star_discrepancy(&a, n).unwrap();
        assert!((got - brute).abs() < 1e-9, "{got} vs {brute}");
    }

    #[test]
    fn slope_of_line() {
        let ns = [10.0, 100.0, 1000.0];
        assert!((slope_per_decade(&ns, &[1.0, 1.5, 2.0]) - 0.5).abs() < 1e-12);
    }
}

//! Continued fractions and convergents.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::real::{interval_cf, quadratic_cf, RealAlgebraic};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContinuedFraction {
    /// `a_0; a_1, a_2, ...`
    pub quotients: Vec<BigInt>,
    /// `(start, length)` of the eventually periodic tail, quadratic inputs only.
    pub period: Option<(usize, usize)>,
    /// True when the expansion terminated (the input is rational).
    pub terminated: bool,
}

impl ContinuedFraction {
    /// Convergents `p_j / q_j`.
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        let mut out = Vec::with_capacity(self.quotients.len());
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
        for a in &self.quotients {
            let p = a * &p0 + &p1;
            let q = a * &q0 + &q1;
            p1 = std::mem::replace(&mut p0, p.clone());
            q1 = std::mem::replace(&mut q0, q.clone());
            out.push((p, q));
        }
        out
    }
}

/// First `count` partial quotients of `alpha`.
///
/// Quadratic irrationals run the exact `(P, Q)` recursion and report their
/// period. Cubic roots are refined until `count` quotients are certified.
/// Doubles stop with `PrecisionExhausted` once the error interval straddles
/// two quotients.
pub fn continued_fraction(alpha: &RealAlgebraic, count: usize) -> Result<ContinuedFraction> {
    alpha.require_irrational()?;
    if count == 0 {
        return Err(Error::InvalidInput("count must be positive".into()));
    }
    match alpha {
        RealAlgebraic::Quadratic { p, q, d, r } => {
            let (quotients, period) = quadratic_cf(*p, *q, *d, *r, count)?;
            Ok(ContinuedFraction { quotients, period, terminated: false })
        }
        RealAlgebraic::Double { .. } => {
            let (lo, hi) = alpha.enclosure(0);
            let (quotients, _) = interval_cf(&lo, &hi, count);
            if quotients.len() < count {
                return Err(Error::PrecisionExhausted {
                    steps: quotients.len(),
                    detail: format!("error radius of {alpha} admits two choices for quotient {}", quotients.len()),
                });
            }
            Ok(ContinuedFraction { quotients, period: None, terminated: false })
        }
        _ => {
            let mut bits = 64 + 8 * count as u32;
            loop {
                let (lo, hi) = alpha.enclosure(bits);
                let exact = lo == hi;
                let (quotients, done) = interval_cf(&lo, &hi, count);
                if quotients.len() >= count || (exact && done) {
                    let terminated = exact && done && quotients.len() < count;
                    return Ok(ContinuedFraction { quotients, period: None, terminated });
                }
                bits *= 2;
                if bits > 1 << 20 {
                    return Err(Error::PrecisionExhausted { steps: quotients.len(), detail: "enclosure refinement cap".into() });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{Signed, ToPrimitive};

    fn small(cf: &ContinuedFraction) -> Vec<i64> {
        cf.quotients.iter().map(|a| a.to_i64().unwrap()).collect()
    }

    #[test]
    fn golden_and_sqrt2() {
        let g = continued_fraction(&RealAlgebraic::golden(), 10).unwrap();
        assert_eq!(small(&g), vec![1; 10]);
        assert_eq!(g.period, Some((0, 1)));
        let s = continued_fraction(&RealAlgebraic::sqrt(2).unwrap(), 6).unwrap();
        assert_eq!(small(&s), vec![1, 2, 2, 2, 2, 2]);
        assert_eq!(s.period, Some((1, 1)));
    }

    #[test]
    fn sqrt_periods() {
        // sqrt 7 = [2; 1, 1, 1, 4], sqrt 13 = [3; 1, 1, 1, 1, 6]
        let s7 = continued_fraction(&RealAlgebraic::sqrt(7).unwrap(), 9).unwrap();
        assert_eq!(small(&s7), vec![2, 1, 1, 1, 4, 1, 1, 1, 4]);
        assert_eq!(s7.period, Some((1, 4)));
        let s13 = continued_fraction(&RealAlgebraic::sqrt(13).unwrap(), 3).unwrap();
        assert_eq!(s13.period, Some((1, 5)));
    }

    #[test]
    fn quadratic_matches_interval_route() {
        for s in ["quad:3,-2,11,5", "quad:-7,3,13,4", "sqrt:94", "quad:1,1,2,-3"] {
            let a: RealAlgebraic = s.parse().unwrap();
            let exact = continued_fraction(&a, 30).unwrap();
            let (lo, hi) = a.enclosure(400);
            let (via_interval, _) = interval_cf(&lo, &hi, 30);
            assert_eq!(exact.quotients, via_interval, "{s}");
        }
    }

    #[test]
    fn rational_rejected() {
        let half = RealAlgebraic::rational(1, 2).unwrap();
        assert!(matches!(continued_fraction(&half, 3), Err(Error::NotIrrational(_))));
    }

    #[test]
    fn double_exhausts_precision() {
        let x: RealAlgebraic = "1.4142135623730951".parse().unwrap();
        let e = continued_fraction(&x, 60).unwrap_err();
        assert!(matches!(e, Error::PrecisionExhausted { steps, .. } if steps > 10 && steps < 60));
        assert_eq!(small(&continued_fraction(&x, 8).unwrap()), vec![1, 2, 2, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn liouville_terminates() {
        let a: RealAlgebraic = "liouville:2:3".parse().unwrap();
        let cf = continued_fraction(&a, 50).unwrap();
        assert!(cf.terminated);
        let (p, q) = cf.convergents().last().unwrap().clone();
        assert_eq!(BigRational::new(p, q), crate::numbers::real::liouville_value(2, 3));
    }

    #[test]
    fn cubic_matches_lagrange_oracle() {
        let theta = continued_fraction(&RealAlgebraic::cubic7(), 20).unwrap();
        let oracle = crate::testutil::lagrange_cf(&[-1, -2, 1, 1], 1, 20);
        assert_eq!(small(&theta), oracle);
        assert_eq!(&small(&theta)[..8], &[1, 4, 20, 2, 3, 1, 6, 10]);
        let sq = continued_fraction(&"cubic:7^2".parse().unwrap(), 40).unwrap();
        assert_eq!(small(&sq), crate::testutil::lagrange_cf(&[-1, 6, -5, 1], 1, 40));
    }

    #[test]
    fn convergent_error_bound() {
        for a in [RealAlgebraic::golden(), RealAlgebraic::cubic7(), "cubic:7^2".parse().unwrap()] {
            let cf = continued_fraction(&a, 25).unwrap();
            let conv = cf.convergents();
            let (lo, hi) = a.enclosure(600);
            for j in 0..conv.len() - 1 {
                let (p, q) = &conv[j];
                let q1 = &conv[j + 1].1;
                let approx = BigRational::new(p.clone(), q.clone());
                let bound = BigRational::new(BigInt::one(), q * q1);
                let err = (&approx - &lo).abs().max((&approx - &hi).abs());
                assert!(err < bound, "j={j}");
            }
        }
    }
}

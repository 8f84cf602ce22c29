//! Multiplicative badness scans: the smallest `H(m) ||m . alpha||` over `H(m) <= M`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::real::RealAlgebraic;
use crate::dd::Dd;
use crate::error::{Error, Result};

/// A dual approximation `m` with `H(m) = prod max(1, |m_i|)` and error `||m . alpha||`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxRecord {
    pub m: Vec<i64>,
    pub height: u64,
    pub error: f64,
    pub quality: f64,
}

impl ApproxRecord {
    pub fn new(m: Vec<i64>, error: f64) -> Self {
        let height = mult_height(&m);
        ApproxRecord { quality: height as f64 * error, m, height, error }
    }

    /// `(height, quality, m)` ordering used for every tie-break.
    fn better_than(&self, other: &ApproxRecord) -> bool {
        (self.quality, self.height, &self.m) < (other.quality, other.height, &other.m)
    }
}

pub fn mult_height(m: &[i64]) -> u64 {
    m.iter().map(|&x| x.unsigned_abs().max(1)).product()
}

/// Records ordered by height whose quality beats every record of smaller or
/// equal height: the running minima `min_{H(m) <= h} H(m) ||m . alpha||`.
#[derive(Clone, Debug, Default)]
pub struct ParetoFront {
    // height -> best record at that height, strictly decreasing quality
    stairs: BTreeMap<u64, ApproxRecord>,
}

impl ParetoFront {
    pub fn insert(&mut self, rec: &ApproxRecord) {
        if let Some((_, prev)) = self.stairs.range(..=rec.height).next_back() {
            if !rec.better_than(prev) || (prev.height < rec.height && prev.quality <= rec.quality) {
                return;
            }
        }
        let dominated: Vec<u64> = self
            .stairs
            .range(rec.height..)
            .take_while(|(_, r)| r.quality >= rec.quality)
            .map(|(&h, _)| h)
            .collect();
        for h in dominated {
            self.stairs.remove(&h);
        }
        self.stairs.insert(rec.height, rec.clone());
    }

    pub fn merge(&mut self, other: &ParetoFront) {
        for r in other.stairs.values() {
            self.insert(r);
        }
    }

    pub fn records(&self) -> Vec<ApproxRecord> {
        self.stairs.values().cloned().collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BadnessScan {
    pub worst: ApproxRecord,
    /// Every scanned `m` with quality below the threshold, ordered by quality.
    pub below: Vec<ApproxRecord>,
    /// Running minima in order of increasing height.
    pub running_minima: Vec<ApproxRecord>,
    pub height_bound: u64,
    pub scanned: u64,
}

/// Largest admissible height bound per dimension.
pub fn scan_envelope(d: usize) -> u64 {
    match d {
        1 => 1_000_000,
        2 => 1_000,
        3 => 200,
        _ => 0,
    }
}

/// Scans every nonzero `m` with `H(m) <= bound`, identifying `m` with `-m`
/// (the first nonzero coordinate is taken positive).
pub fn mult_badness(alpha: &[RealAlgebraic], bound: u64, threshold: f64) -> Result<BadnessScan> {
    let d = alpha.len();
    if !(1..=3).contains(&d) {
        return Err(Error::InvalidInput(format!("dimension {d} not in 1..=3")));
    }
    for a in alpha {
        a.require_irrational()?;
    }
    if bound == 0 {
        return Err(Error::InvalidInput("height bound must be positive".into()));
    }
    if bound > scan_envelope(d) {
        return Err(Error::EnvelopeExceeded(format!(
            "height bound {bound} above {} for d = {d}",
            scan_envelope(d)
        )));
    }
    let a: Vec<Dd> = alpha.iter().map(|x| x.to_dd()).collect();
    let radius: f64 = alpha.iter().map(|x| x.radius()).fold(0.0, f64::max);
    let m_max = bound as i64;
    let firsts: Vec<i64> = if d == 1 { (1..=m_max).collect() } else { (0..=m_max).collect() };
    let chunk = (firsts.len() / (4 * rayon::current_num_threads()).max(1)).max(256);
    let parts: Vec<Partial> = firsts
        .par_chunks(chunk)
        .map(|firsts| {
            let mut part = Partial::default();
            let mut m = vec![0i64; d];
            for &m0 in firsts {
                m[0] = m0;
                scan_rest(&a, &mut m, 1, m0.unsigned_abs().max(1), bound, m0 != 0, threshold, &mut part);
            }
            part
        })
        .collect();
    let mut total = Partial::default();
    for p in parts {
        total.merge(p);
    }
    let worst = total.worst.ok_or_else(|| Error::InvalidInput("empty scan".into()))?;
    if radius > 0.0 && worst.error <= radius * bound as f64 * d as f64 {
        return Err(Error::PrecisionExhausted {
            steps: total.scanned as usize,
            detail: format!("worst error {} within the input radius", worst.error),
        });
    }
    let mut below = total.below;
    below.sort_by(|x, y| (x.quality, x.height, &x.m).partial_cmp(&(y.quality, y.height, &y.m)).unwrap());
    Ok(BadnessScan {
        worst,
        below,
        running_minima: total.front.records(),
        height_bound: bound,
        scanned: total.scanned,
    })
}

#[derive(Default)]
struct Partial {
    worst: Option<ApproxRecord>,
    below: Vec<ApproxRecord>,
    front: ParetoFront,
    scanned: u64,
}

impl Partial {
    fn push(&mut self, rec: ApproxRecord, threshold: f64) {
        self.scanned += 1;
        if rec.quality < threshold {
            self.below.push(rec.clone());
        }
        self.front.insert(&rec);
        if self.worst.as_ref().is_none_or(|w| rec.better_than(w)) {
            self.worst = Some(rec);
        }
    }

    fn merge(&mut self, other: Partial) {
        self.scanned += other.scanned;
        self.below.extend(other.below);
        self.front.merge(&other.front);
        if let Some(w) = other.worst {
            if self.worst.as_ref().is_none_or(|cur| w.better_than(cur)) {
                self.worst = Some(w);
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn scan_rest(a: &[Dd], m: &mut Vec<i64>, i: usize, h: u64, bound: u64, nonzero_seen: bool, threshold: f64, out: &mut Partial) {
    if i == m.len() {
        if !nonzero_seen {
            return;
        }
        let mut acc = Dd::from_f64(0.0);
        for (x, &mi) in a.iter().zip(m.iter()) {
            acc = acc + x.mul_i64(mi).signed_frac();
        }
        out.push(ApproxRecord::new(m.clone(), acc.dist_to_int()), threshold);
        return;
    }
    let room = (bound / h) as i64;
    // once a nonzero coordinate appeared the sign is fixed; otherwise this
    // coordinate is the first nonzero one and must be positive
    let lo = if nonzero_seen { -room } else { 0 };
    for mi in lo..=room {
        m[i] = mi;
        scan_rest(a, m, i + 1, h * mi.unsigned_abs().max(1), bound, nonzero_seen || mi != 0, threshold, out);
    }
    m[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Naive oracle: full sign range, f64 arithmetic via rounding.
    fn naive(alpha: &[f64], bound: i64) -> (f64, Vec<i64>) {
        let d = alpha.len();
        let mut best = (f64::INFINITY, 0u64, vec![]);
        let mut m = vec![-bound; d];
        loop {
            let h: u64 = m.iter().map(|&x: &i64| x.unsigned_abs().max(1)).product();
            let first = m.iter().find(|&&x| x != 0).copied().unwrap_or(0);
            if h <= bound as u64 && first > 0 {
                let dot: f64 = m.iter().zip(alpha).map(|(&mi, &a)| mi as f64 * a).sum();
                let err = (dot - dot.round()).abs();
                let q = h as f64 * err;
                if (q, h, &m) < (best.0, best.1, &best.2) {
                    best = (q, h, m.clone());
                }
            }
            let mut i = 0;
            loop {
                if i == d {
                    return (best.0, best.2);
                }
                m[i] += 1;
                if m[i] <= bound {
                    break;
                }
                m[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn golden_worst_is_m_equal_one() {
        let scan = mult_badness(&[RealAlgebraic::golden()], 100_000, 0.4).unwrap();
        assert_eq!(scan.worst.m, vec![1]);
        let want = (3.0 - 5f64.sqrt()) / 2.0;
        assert!((scan.worst.quality - want).abs() < 1e-15);
        assert_eq!(scan.running_minima.len(), 1);
        assert!(scan.below.iter().all(|r| r.quality < 0.4));
    }

    #[test]
    fn rejects_rational_and_envelope() {
        let half = RealAlgebraic::rational(1, 2).unwrap();
        assert!(matches!(mult_badness(&[half], 10, 0.1), Err(Error::NotIrrational(_))));
        let g = RealAlgebraic::golden();
        assert!(matches!(mult_badness(&[g.clone(), g], 5000, 0.1), Err(Error::EnvelopeExceeded(_))));
    }

    #[test]
    fn pareto_front_is_running_minimum() {
        let alpha = [RealAlgebraic::cubic7(), "cubic:7^2".parse().unwrap()];
        let scan = mult_badness(&alpha, 200, 0.0).unwrap();
        let front = &scan.running_minima;
        for w in front.windows(2) {
            assert!(w[0].height < w[1].height && w[0].quality > w[1].quality);
        }
        assert_eq!(front.last().unwrap(), &scan.worst);
        assert_eq!(scan.scanned, {
            // count of canonical nonzero m with H(m) <= 200
            let mut n = 0u64;
            for a in -200i64..=200 {
                for b in -200i64..=200 {
                    if (a, b) != (0, 0) && (a > 0 || (a == 0 && b > 0)) && a.unsigned_abs().max(1) * b.unsigned_abs().max(1) <= 200 {
                        n += 1;
                    }
                }
            }
            n
        });
    }

    #[test]
    fn matches_naive_oracle_d2() {
        let alpha = [RealAlgebraic::sqrt(2).unwrap(), RealAlgebraic::sqrt(3).unwrap()];
        let scan = mult_badness(&alpha, 300, 0.0).unwrap();
        let (q, m) = naive(&[2f64.sqrt(), 3f64.sqrt()], 300);
        assert_eq!(scan.worst.m, m);
        assert!((scan.worst.quality - q).abs() < 1e-9);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn matches_naive_oracle(x in 0.01f64..0.99, bound in 1i64..500) {
            let alpha = RealAlgebraic::Double { value: x, radius: 0.0 };
            let scan = mult_badness(&[alpha], bound as u64, 0.0).unwrap();
            let (q, m) = naive(&[x], bound);
            prop_assert!((scan.worst.quality - q).abs() <= 1e-12 * bound as f64);
            if (scan.worst.quality - q).abs() == 0.0 {
                prop_assert_eq!(scan.worst.m.clone(), m);
            }
        }
    }
}

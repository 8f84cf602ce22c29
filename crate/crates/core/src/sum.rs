//! Compensated (Neumaier) summation with a running rounding estimate.

use std::ops::AddAssign;

#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs_sum: f64,
    count: u64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += x.abs();
        self.count += 1;
    }

    pub fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.comp);
        // the two adds above counted as terms; restore the real bookkeeping
        self.count = self.count - 2 + other.count;
        self.abs_sum = self.abs_sum - other.sum.abs() - other.comp.abs() + other.abs_sum;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    /// A-priori bound on the summation error: `2u|S| + 2n u^2 sum|x_i|`.
    pub fn rounding_estimate(&self) -> f64 {
        let u = f64::EPSILON / 2.0;
        2.0 * u * self.value().abs() + 2.0 * (self.count as f64) * u * u * self.abs_sum
    }
}

impl AddAssign<f64> for CompensatedSum {
    fn add_assign(&mut self, x: f64) {
        self.add(x);
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = CompensatedSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation() {
        let s: CompensatedSum = [1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 1.0);
        assert_eq!(s.count(), 3);
    }

    #[test]
    fn merge_matches_sequential() {
        let xs: Vec<f64> = (1..2000).map(|i| 1.0 / i as f64).collect();
        let all: CompensatedSum = xs.iter().copied().collect();
        let mut a: CompensatedSum = xs[..700].iter().copied().collect();
        let b: CompensatedSum = xs[700..].iter().copied().collect();
        a.merge(&b);
        assert!((a.value() - all.value()).abs() < 1e-15);
        assert_eq!(a.count(), all.count());
    }
}

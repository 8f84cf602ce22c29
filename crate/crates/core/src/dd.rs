//! Double-double arithmetic.
//!
//! A value is the unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`, giving
//! roughly 106 bits of precision. Only the operations needed for fractional parts
//! of `m * alpha` and for lattice coordinates of Dani lattices are provided.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Nearest double-double to an exact rational.
    pub fn from_rational(x: &BigRational) -> Self {
        let hi = rational_to_f64(x);
        if !hi.is_finite() {
            return Dd { hi, lo: 0.0 };
        }
        let rest = x - BigRational::from_f64(hi).unwrap_or_else(BigRational::zero);
        Dd::new(hi, rational_to_f64(&rest))
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn mul_f64(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_i64(self, m: i64) -> Dd {
        debug_assert!(m.unsigned_abs() < (1u64 << 53));
        self.mul_f64(m as f64)
    }

    pub fn round(self) -> Dd {
        let r = self.hi.round();
        if r == self.hi {
            // hi already integral, the low word decides
            let lr = self.lo.round();
            let (hi, lo) = quick_two_sum(r, lr);
            Dd { hi, lo }
        } else if (r - self.hi).abs() == 0.5 {
            // tie on hi: lo breaks it
            let r = if self.lo > 0.0 && r < self.hi {
                r + 1.0
            } else if self.lo < 0.0 && r > self.hi {
                r - 1.0
            } else {
                r
            };
            Dd { hi: r, lo: 0.0 }
        } else {
            Dd { hi: r, lo: 0.0 }
        }
    }

    pub fn floor(self) -> Dd {
        let f = self.hi.floor();
        if f == self.hi {
            let lf = self.lo.floor();
            let (hi, lo) = quick_two_sum(f, lf);
            Dd { hi, lo }
        } else {
            Dd { hi: f, lo: 0.0 }
        }
    }

    /// `self - round(self)`, in `[-1/2, 1/2]`.
    pub fn signed_frac(self) -> Dd {
        self - self.round()
    }

    /// `self - floor(self)`, in `[0, 1)`.
    pub fn frac(self) -> Dd {
        let f = self - self.floor();
        if f >= Dd::from_f64(1.0) {
            f - Dd::from_f64(1.0)
        } else if f < Dd::from_f64(0.0) {
            f + Dd::from_f64(1.0)
        } else {
            f
        }
    }

    /// Distance to the nearest integer, `||self||`.
    pub fn dist_to_int(self) -> f64 {
        self.signed_frac().to_f64().abs()
    }

    /// Signed distance from `m * self` to the nearest integer.
    pub fn mul_signed_frac(self, m: i64) -> f64 {
        self.mul_i64(m).signed_frac().to_f64()
    }

    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::from_f64(x)
    }
}

/// Correctly rounded enough conversion of a big rational to `f64`.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    // Scale so that the integer quotient carries 64+ significant bits.
    let n = x.numer();
    let d = x.denom();
    let shift = d.bits() as i64 - n.bits() as i64 + 70;
    let q: BigInt = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    let qf = q.to_f64().unwrap_or(f64::NAN);
    qf * 2f64.powi(-shift as i32)
}

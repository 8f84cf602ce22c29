//! Exactly represented real inputs: quadratic irrationals, roots of totally real
//! cubics, truncated Liouville series, rationals, and plain doubles with an
//! error radius.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Working enclosure width used when converting to double-double.
const DD_BITS: u32 = 140;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum RealAlgebraic {
    /// `(p + q sqrt(d)) / r`, `q != 0`, `d > 1` not a square, `r > 0`.
    Quadratic { p: i64, q: i64, d: i64, r: i64 },
    /// The `root`-th largest real root (1-based) of `x^3 + a x^2 + b x + c`.
    Cubic(CubicRoot),
    /// `sum_{j=1..terms} base^(-j!)`.
    Liouville { base: u32, terms: u32 },
    Rational { p: i64, q: i64 },
    Double { value: f64, radius: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubicRoot {
    coeffs: [i64; 3],
    root: u8,
    label: Option<String>,
    // isolating dyadic interval [lo, lo + 1] / 2^exp, with f(lo / 2^exp) of sign `lo_sign`
    lo: BigInt,
    exp: u32,
    lo_sign: Sign,
}

impl CubicRoot {
    pub fn new(coeffs: [i64; 3], root: u8) -> Result<Self> {
        if !(1..=3).contains(&root) {
            return Err(Error::InvalidInput(format!("root index {root} not in 1..3")));
        }
        let [a, b, c] = coeffs.map(|x| x as i128);
        let disc = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
        if disc < 0 {
            return Err(Error::NotTotallyReal(format!(
                "x^3 + {a}x^2 + {b}x + {c} has complex roots (discriminant {disc})"
            )));
        }
        if disc == 0 {
            return Err(Error::InvalidInput("repeated root".into()));
        }
        // monic integer cubic is reducible iff it has an integer root dividing c
        if c == 0 {
            return Err(Error::InvalidInput("reducible cubic (root 0)".into()));
        }
        let cabs = c.unsigned_abs();
        if cabs <= 1 << 40 {
            let mut dv = 1u128;
            while dv * dv <= cabs {
                if cabs % dv == 0 {
                    for cand in [dv as i128, -(dv as i128), (cabs / dv) as i128, -((cabs / dv) as i128)] {
                        if cand * cand * cand + a * cand * cand + b * cand + c == 0 {
                            return Err(Error::InvalidInput(format!("reducible cubic (root {cand})")));
                        }
                    }
                }
                dv += 1;
            }
        } else {
            return Err(Error::InvalidInput("constant term too large".into()));
        }
        let bound = 1 + a.abs().max(b.abs()).max(c.abs());
        let mut exp = 2u32;
        loop {
            let steps = bound << exp;
            if steps > 1 << 26 {
                return Err(Error::InvalidInput("roots too close to isolate".into()));
            }
            let mut changes = Vec::new();
            let mut prev = sign_at(&coeffs, &BigInt::from(-steps), exp);
            for j in (-steps + 1)..=steps {
                let s = sign_at(&coeffs, &BigInt::from(j), exp);
                if s != prev {
                    changes.push((j - 1, prev));
                }
                prev = s;
            }
            if changes.len() == 3 {
                changes.reverse();
                let (j, s) = changes[root as usize - 1];
                let mut out = CubicRoot { coeffs, root, label: None, lo: BigInt::from(j), exp, lo_sign: s };
                out.refine(DD_BITS + 60);
                return Ok(out);
            }
            exp += 1;
        }
    }

    pub fn coeffs(&self) -> [i64; 3] {
        self.coeffs
    }

    pub fn root_index(&self) -> u8 {
        self.root
    }

    fn with_label(mut self, label: &str) -> Self {
        self.label = Some(label.to_string());
        self
    }

    fn refine(&mut self, bits: u32) {
        while self.exp < bits {
            let mid = &self.lo * 2 + 1;
            self.exp += 1;
            let s = sign_at(&self.coeffs, &mid, self.exp);
            self.lo *= 2;
            if s == self.lo_sign {
                self.lo = mid;
            }
        }
    }

    fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        let mut r = self.clone();
        r.refine(bits);
        let den = BigInt::one() << r.exp as usize;
        (BigRational::new(r.lo.clone(), den.clone()), BigRational::new(&r.lo + 1, den))
    }

    /// All three roots as doubles, largest first.
    pub fn conjugates(&self) -> Result<[f64; 3]> {
        let mut out = [0.0; 3];
        for (i, slot) in out.iter_mut().enumerate() {
            let r = CubicRoot::new(self.coeffs, i as u8 + 1)?;
            *slot = r.enclosure_mid_f64();
        }
        Ok(out)
    }

    fn enclosure_mid_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(DD_BITS);
        Dd::from_rational(&((lo + hi) / BigRational::from_integer(2.into()))).to_f64()
    }

    /// Minimal polynomial and root of the square of this root.
    pub fn squared(&self) -> Result<CubicRoot> {
        let [a, b, c] = self.coeffs;
        let q = [-(a * a - 2 * b), b * b - 2 * a * c, -(c * c)];
        let target = self.enclosure_mid_f64().powi(2);
        let mut best: Option<(f64, CubicRoot)> = None;
        for i in 1..=3 {
            let r = CubicRoot::new(q, i)?;
            let gap = (r.enclosure_mid_f64() - target).abs();
            if best.as_ref().is_none_or(|(g, _)| gap < *g) {
                best = Some((gap, r));
            }
        }
        Ok(best.expect("three roots").1)
    }
}

/// Sign of `2^(3 exp) f(j / 2^exp)` for the monic cubic.
fn sign_at(coeffs: &[i64; 3], j: &BigInt, exp: u32) -> Sign {
    let s = BigInt::one() << exp as usize;
    let s2 = &s * &s;
    let j2 = j * j;
    let v = &j2 * j + BigInt::from(coeffs[0]) * &j2 * &s + BigInt::from(coeffs[1]) * j * &s2
        + BigInt::from(coeffs[2]) * &s2 * &s;
    v.sign()
}

impl RealAlgebraic {
    pub fn golden() -> Self {
        RealAlgebraic::Quadratic { p: 1, q: 1, d: 5, r: 2 }
    }

    pub fn sqrt(d: i64) -> Result<Self> {
        Self::quadratic(0, 1, d, 1)
    }

    pub fn quadratic(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if d <= 1 || d.sqrt() * d.sqrt() == d {
            return Err(Error::NotIrrational(format!("sqrt({d}) is rational")));
        }
        if q == 0 {
            return Err(Error::NotIrrational("q = 0".into()));
        }
        let (p, q, r) = if r < 0 { (-p, -q, -r) } else { (p, q, r) };
        Ok(RealAlgebraic::Quadratic { p, q, d, r })
    }

    /// `theta = 2 cos(2 pi / 7)`, the largest root of `x^3 + x^2 - 2x - 1`.
    pub fn cubic7() -> Self {
        let r = CubicRoot::new([1, -2, -1], 1).expect("x^3+x^2-2x-1 is totally real");
        RealAlgebraic::Cubic(r.with_label("cubic:7"))
    }

    pub fn rational(p: i64, q: i64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        Ok(RealAlgebraic::Rational { p, q })
    }

    pub fn is_irrational(&self) -> bool {
        !matches!(self, RealAlgebraic::Rational { .. })
    }

    pub fn require_irrational(&self) -> Result<()> {
        if self.is_irrational() {
            Ok(())
        } else {
            Err(Error::NotIrrational(format!("{self} is rational")))
        }
    }

    /// Rational `lo <= x <= hi` with `hi - lo <= 2^-bits` for exact variants;
    /// doubles return `value -+ radius`.
    pub fn enclosure(&self, bits: u32) -> (BigRational, BigRational) {
        match self {
            RealAlgebraic::Quadratic { p, q, d, r } => {
                let q2d = BigInt::from(*q) * BigInt::from(*q) * BigInt::from(*d);
                let scaled = q2d << (2 * bits as usize);
                let s = scaled.sqrt();
                let den = BigInt::one() << bits as usize;
                let root_lo = BigRational::new(s.clone(), den.clone());
                let root_hi = BigRational::new(s + 1, den);
                let p = BigRational::from_integer(BigInt::from(*p));
                let r = BigRational::from_integer(BigInt::from(*r));
                if *q > 0 {
                    ((&p + root_lo) / &r, (p + root_hi) / r)
                } else {
                    ((&p - root_hi) / &r, (p - root_lo) / r)
                }
            }
            RealAlgebraic::Cubic(c) => c.enclosure(bits),
            RealAlgebraic::Liouville { base, terms } => {
                let v = liouville_value(*base, *terms);
                (v.clone(), v)
            }
            RealAlgebraic::Rational { p, q } => {
                let v = BigRational::new(BigInt::from(*p), BigInt::from(*q));
                (v.clone(), v)
            }
            RealAlgebraic::Double { value, radius } => {
                let v = BigRational::from_float(*value).unwrap_or_else(BigRational::zero);
                let r = BigRational::from_float(*radius).unwrap_or_else(BigRational::zero);
                (&v - &r, v + r)
            }
        }
    }

    /// Double-double approximation (exact variants are rounded from a
    /// `2^-140` enclosure).
    pub fn to_dd(&self) -> Dd {
        match self {
            RealAlgebraic::Double { value, .. } => Dd::from_f64(*value),
            _ => {
                let (lo, hi) = self.enclosure(DD_BITS);
                Dd::from_rational(&((lo + hi) / BigRational::from_integer(2.into())))
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.to_dd().to_f64()
    }

    /// Uncertainty of `to_dd` in absolute terms.
    pub fn radius(&self) -> f64 {
        match self {
            RealAlgebraic::Double { radius, .. } => *radius,
            _ => 0.0,
        }
    }
}

/// `sum_{j=1..terms} base^(-j!)` as an exact rational.
pub fn liouville_value(base: u32, terms: u32) -> BigRational {
    let mut total = BigRational::zero();
    let mut fact = 1usize;
    for j in 1..=terms as usize {
        fact *= j;
        total += BigRational::new(BigInt::one(), BigInt::from(base).pow(fact as u32));
    }
    total
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealAlgebraic::Quadratic { p: 1, q: 1, d: 5, r: 2 } => write!(f, "golden"),
            RealAlgebraic::Quadratic { p: 0, q: 1, d, r: 1 } => write!(f, "sqrt:{d}"),
            RealAlgebraic::Quadratic { p, q, d, r } => write!(f, "quad:{p},{q},{d},{r}"),
            RealAlgebraic::Cubic(c) => match &c.label {
                Some(l) => write!(f, "{l}"),
                None => write!(f, "cubic:{},{},{}@{}", c.coeffs[0], c.coeffs[1], c.coeffs[2], c.root),
            },
            RealAlgebraic::Liouville { base, terms } => write!(f, "liouville:{base}:{terms}"),
            RealAlgebraic::Rational { p, q } => write!(f, "{p}/{q}"),
            RealAlgebraic::Double { value, .. } => write!(f, "{value:e}"),
        }
    }
}

impl FromStr for RealAlgebraic {
    type Err = Error;

    /// Accepts `golden`, `sqrt:D`, `quad:p,q,D,r`, `cubic:7`, `cubic:7^2`,
    /// `cubic:a,b,c[@i]`, `liouville:base:terms`, `p/q` and decimal literals.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let int = |t: &str| -> Result<i64> {
            t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("integer `{t}` in `{s}`: {e}")))
        };
        if s == "golden" {
            return Ok(Self::golden());
        }
        if let Some(d) = s.strip_prefix("sqrt:") {
            return Self::sqrt(int(d)?);
        }
        if let Some(rest) = s.strip_prefix("quad:") {
            let v = rest.split(',').map(int).collect::<Result<Vec<_>>>()?;
            if v.len() != 4 {
                return Err(Error::Parse(format!("`{s}`: expected quad:p,q,D,r")));
            }
            return Self::quadratic(v[0], v[1], v[2], v[3]);
        }
        if s == "cubic:7" {
            return Ok(Self::cubic7());
        }
        if s == "cubic:7^2" {
            let RealAlgebraic::Cubic(c) = Self::cubic7() else { unreachable!() };
            return Ok(RealAlgebraic::Cubic(c.squared()?.with_label("cubic:7^2")));
        }
        if let Some(rest) = s.strip_prefix("cubic:") {
            let (poly, idx) = match rest.split_once('@') {
                Some((p, i)) => (p, int(i)?),
                None => (rest, 1),
            };
            let v = poly.split(',').map(int).collect::<Result<Vec<_>>>()?;
            if v.len() != 3 {
                return Err(Error::Parse(format!("`{s}`: expected cubic:a,b,c[@i]")));
            }
            if !(1..=3).contains(&idx) {
                return Err(Error::Parse(format!("`{s}`: root index must be 1..3")));
            }
            return Ok(RealAlgebraic::Cubic(CubicRoot::new([v[0], v[1], v[2]], idx as u8)?));
        }
        if let Some(rest) = s.strip_prefix("liouville:") {
            let (b, t) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("`{s}`: expected liouville:base:terms")))?;
            let base = int(b)?;
            let terms = int(t)?;
            if !(2..=1 << 16).contains(&base) || !(1..=8).contains(&terms) {
                return Err(Error::Parse(format!("`{s}`: base in 2..65536, terms in 1..8")));
            }
            return Ok(RealAlgebraic::Liouville { base: base as u32, terms: terms as u32 });
        }
        if let Some((p, q)) = s.split_once('/') {
            return Self::rational(int(p)?, int(q)?);
        }
        let value: f64 = s
            .parse()
            .map_err(|_| Error::Parse(format!("unrecognized number `{s}`")))?;
        if !value.is_finite() {
            return Err(Error::Parse(format!("non-finite number `{s}`")));
        }
        Ok(RealAlgebraic::Double { value, radius: value.abs() * f64::EPSILON })
    }
}

impl TryFrom<String> for RealAlgebraic {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RealAlgebraic> for String {
    fn from(r: RealAlgebraic) -> String {
        r.to_string()
    }
}

/// Exact continued fraction of `(P + sqrt(D)) / Q` states with period detection.
pub(crate) fn quadratic_cf(p: i64, q: i64, d: i64, r: i64, count: usize) -> Result<(Vec<BigInt>, Option<(usize, usize)>)> {
    let overflow = || Error::InvalidInput("quadratic state overflow".into());
    // (p + q sqrt(d)) / r  ==  (P + sqrt(D')) / Q with Q | D' - P^2
    let (mut pp, mut qq, mut dd) = if q > 0 {
        (p as i128, r as i128, (q as i128) * (q as i128) * d as i128)
    } else {
        (-(p as i128), -(r as i128), (q as i128) * (q as i128) * d as i128)
    };
    if (dd - pp * pp) % qq != 0 {
        pp = pp.checked_mul(qq.abs()).ok_or_else(overflow)?;
        dd = dd.checked_mul(qq * qq).ok_or_else(overflow)?;
        qq = qq.checked_mul(qq.abs()).ok_or_else(overflow)?;
    }
    let s = isqrt_i128(dd);
    let mut seen = std::collections::HashMap::new();
    let mut out = Vec::with_capacity(count);
    let mut period = None;
    for idx in 0..count {
        if period.is_none() {
            if let Some(&start) = seen.get(&(pp, qq)) {
                period = Some((start, idx - start));
            } else {
                seen.insert((pp, qq), idx);
            }
        }
        let a = quad_floor(pp, s, qq);
        out.push(BigInt::from(a));
        let np = a * qq - pp;
        let nq = (dd - np * np) / qq;
        pp = np;
        qq = nq;
    }
    // keep detecting the period past `count` if it was not yet seen
    if period.is_none() {
        for idx in count..count + 4 * (s as usize + 2) {
            if let Some(&start) = seen.get(&(pp, qq)) {
                period = Some((start, idx - start));
                break;
            }
            seen.insert((pp, qq), idx);
            let a = quad_floor(pp, s, qq);
            let np = a * qq - pp;
            qq = (dd - np * np) / qq;
            pp = np;
        }
    }
    Ok((out, period))
}

/// `floor((P + sqrt D) / Q)` given `s = isqrt(D)` and `D` not a square.
fn quad_floor(p: i128, s: i128, q: i128) -> i128 {
    if q > 0 {
        floor_div(p + s, q)
    } else {
        floor_div(p + s + 1, q)
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn isqrt_i128(n: i128) -> i128 {
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Partial quotients shared by both ends of the enclosure `[lo, hi]`.
pub(crate) fn interval_cf(lo: &BigRational, hi: &BigRational, count: usize) -> (Vec<BigInt>, bool) {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let mut out = Vec::new();
    while out.len() < count {
        let a = lo.floor();
        if hi.floor() != a {
            return (out, false);
        }
        out.push(a.to_integer());
        let flo = &lo - &a;
        let fhi = &hi - &a;
        if flo.is_zero() {
            // exact rational endpoint; the expansion ends here when both agree
            let done = fhi.is_zero();
            return (out, done);
        }
        let nlo = fhi.recip();
        let nhi = flo.recip();
        lo = nlo;
        hi = nhi;
    }
    (out, true)
}

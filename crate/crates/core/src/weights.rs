//! Smoothing weights.
//!
//! Every component is a scaled centered cardinal B-spline `w(x) = B_m(x / s)`
//! where `B_m` is the `m`-fold convolution of the indicator of `[-1/2, 1/2]`.
//! Its Fourier transform is `s * sinc(s xi)^m` with `sinc(t) = sin(pi t) / (pi t)`,
//! which is nonnegative for even `m`. The function is `C^(m-2)` and supported in
//! `[-m s / 2, m s / 2]`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::dd::rational_to_f64;
use crate::error::{Error, Result};

/// Largest supported spline order; keeps the exact coefficient tables small.
pub const MAX_ORDER: u32 = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct BSplineWeight {
    order: u32,
    scale: Rational64,
    scale_f: f64,
    // pieces[i] holds ascending-power coefficients of B_m(-m/2 + i + t), t in [0, 1)
    pieces: Vec<Vec<f64>>,
}

/// Exact piecewise coefficients of `B_m` from the convolution recursion
/// `B_m(x) = int_{x-1/2}^{x+1/2} B_{m-1}`.
fn exact_pieces(order: u32) -> Vec<Vec<BigRational>> {
    let mut pieces: Vec<Vec<BigRational>> = vec![vec![BigRational::one()]];
    for m in 2..=order as usize {
        // antiderivatives Q_j(t) = int_0^t P_j
        let anti: Vec<Vec<BigRational>> = pieces
            .iter()
            .map(|p| {
                let mut q = vec![BigRational::zero()];
                for (n, c) in p.iter().enumerate() {
                    q.push(c / BigRational::from_integer(BigInt::from(n + 1)));
                }
                q
            })
            .collect();
        let at_one = |q: &Vec<BigRational>| q.iter().fold(BigRational::zero(), |acc, c| acc + c);
        let mut next = Vec::with_capacity(m);
        for i in 0..m {
            // piece i on [-m/2 + i, -m/2 + i + 1]:
            // Q_{i-1}(1) - Q_{i-1}(t) + Q_i(t)
            let mut poly = vec![BigRational::zero(); m];
            if i >= 1 {
                let q = &anti[i - 1];
                poly[0] += at_one(q);
                for (n, c) in q.iter().enumerate() {
                    poly[n] -= c;
                }
            }
            if i < anti.len() {
                for (n, c) in anti[i].iter().enumerate() {
                    poly[n] += c;
                }
            }
            next.push(poly);
        }
        pieces = next;
    }
    pieces
}

impl BSplineWeight {
    /// Builds `B_m(x / s)`. Requires `m` even, `m >= 4` and `m s / 2 <= 2`.
    pub fn new(order: u32, scale: Rational64) -> Result<Self> {
        if !order.is_multiple_of(2) {
            return Err(Error::InvalidWeight(format!(
                "order {order} is odd; the Fourier transform would change sign"
            )));
        }
        if order < 4 {
            return Err(Error::InvalidWeight(format!(
                "order {order} gives smoothness {} < 2",
                order as i64 - 2
            )));
        }
        if order > MAX_ORDER {
            return Err(Error::InvalidWeight(format!("order {order} exceeds {MAX_ORDER}")));
        }
        if *scale.numer() <= 0 || *scale.denom() <= 0 {
            return Err(Error::InvalidWeight("scale must be positive".into()));
        }
        // support radius m s / 2 <= 2  <=>  m * s <= 4
        if scale * Rational64::from_integer(order as i64) > Rational64::from_integer(4) {
            return Err(Error::InvalidWeight(format!(
                "support radius {order}*{scale}/2 exceeds 2"
            )));
        }
        let pieces = exact_pieces(order)
            .iter()
            .map(|p| p.iter().map(rational_to_f64).collect())
            .collect();
        Ok(BSplineWeight {
            order,
            scale,
            scale_f: scale.to_f64().unwrap_or(f64::NAN),
            pieces,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn scale(&self) -> Rational64 {
        self.scale
    }

    pub fn scale_f64(&self) -> f64 {
        self.scale_f
    }

    /// `m - 2`: the weight is `C^(m-2)`.
    pub fn smoothness(&self) -> u32 {
        self.order - 2
    }

    /// Half-width of the support, `m s / 2`.
    pub fn support_radius(&self) -> f64 {
        self.order as f64 * self.scale_f / 2.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        let m = self.order as f64;
        let u = x / self.scale_f + m / 2.0;
        if !(u > 0.0 && u < m) {
            return 0.0;
        }
        let idx = (u.floor() as usize).min(self.pieces.len() - 1);
        let t = u - idx as f64;
        let p = &self.pieces[idx];
        let v = p.iter().rev().fold(0.0, |acc, c| acc * t + c);
        v.max(0.0)
    }

    /// `s * sinc(s xi)^m`.
    pub fn fourier(&self, xi: f64) -> f64 {
        self.scale_f * sinc(self.scale_f * xi).powi(self.order as i32)
    }

    /// Monotone majorant of the transform: `s * min(1, (pi s |xi|)^(-m))`.
    pub fn envelope(&self, xi: f64) -> f64 {
        let z = PI * self.scale_f * xi.abs();
        if z <= 1.0 {
            self.scale_f
        } else {
            self.scale_f * z.powi(-(self.order as i32))
        }
    }

    /// `int_u^inf envelope(v) dv` for `u >= 0`.
    pub fn envelope_tail(&self, u: f64) -> f64 {
        let s = self.scale_f;
        let m = self.order as f64;
        let knee = 1.0 / (PI * s);
        let decay = |v: f64| s * (PI * s).powf(-m) * v.powf(1.0 - m) / (m - 1.0);
        if u >= knee {
            decay(u)
        } else {
            (knee - u.max(0.0)) * s + decay(knee)
        }
    }

    /// `int_R envelope((|y| - h)_+) dy`: mass of the envelope widened by `h`.
    pub fn widened_envelope_mass(&self, h: f64) -> f64 {
        2.0 * (h * self.scale_f + self.envelope_tail(0.0))
    }

    /// Mass of the widened envelope outside `|y| <= h + u`.
    pub fn widened_envelope_outer(&self, u: f64) -> f64 {
        2.0 * self.envelope_tail(u)
    }

    /// Exact coefficients of `B_m` on its unit pieces, for inspection and tests.
    pub fn exact_pieces(&self) -> Vec<Vec<BigRational>> {
        exact_pieces(self.order)
    }
}

impl fmt::Display for BSplineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bspline:m={},s={}", self.order, self.scale)
    }
}

pub fn sinc(t: f64) -> f64 {
    if t.abs() < 1e-4 {
        let x = PI * t;
        let x2 = x * x;
        // 1 - x^2/6 + x^4/120 - x^6/5040 + x^8/362880
        1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    } else {
        let x = PI * t;
        x.sin() / x
    }
}

/// A k-tuple of weights, one per coordinate; the last one smooths the horizon.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct WeightSystem {
    components: Vec<BSplineWeight>,
}

impl WeightSystem {
    pub fn new(components: Vec<BSplineWeight>) -> Result<Self> {
        if components.len() < 2 {
            return Err(Error::InvalidWeight(format!(
                "need k >= 2 components, got {}",
                components.len()
            )));
        }
        Ok(WeightSystem { components })
    }

    pub fn uniform(k: usize, w: BSplineWeight) -> Result<Self> {
        Self::new(vec![w; k])
    }

    /// `m = 6, s = 2/3` in every coordinate (smoothness 4).
    pub fn standard(k: usize) -> Self {
        let w = BSplineWeight::new(6, Rational64::new(2, 3)).expect("standard weight is admissible");
        Self::uniform(k, w).expect("k >= 2")
    }

    /// Parses `bspline:m=6,s=2/3` and replicates it over `k` coordinates.
    pub fn parse(spec: &str, k: usize) -> Result<Self> {
        let w: BSplineWeight = spec.parse()?;
        Self::uniform(k, w)
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn component(&self, i: usize) -> &BSplineWeight {
        &self.components[i]
    }

    pub fn components(&self) -> &[BSplineWeight] {
        &self.components
    }

    pub fn smoothness(&self) -> u32 {
        self.components.iter().map(|w| w.smoothness()).min().unwrap_or(0)
    }

    /// Product of the transforms at zero, i.e. of the scales.
    pub fn expect_constant(&self) -> f64 {
        self.components.iter().map(|w| w.fourier(0.0)).product()
    }

    pub fn spec_string(&self) -> String {
        let first = &self.components[0];
        if self.components.iter().all(|w| w == first) {
            format!("{first}")
        } else {
            self.components.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";")
        }
    }
}

impl FromStr for BSplineWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("bspline:")
            .ok_or_else(|| Error::Parse(format!("weight spec `{s}` must start with `bspline:`")))?;
        let mut order = None;
        let mut scale = None;
        for part in body.split(',') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value in `{part}`")))?;
            match key.trim() {
                "m" => {
                    order = Some(
                        val.trim()
                            .parse::<u32>()
                            .map_err(|e| Error::Parse(format!("order `{val}`: {e}")))?,
                    )
                }
                "s" => scale = Some(parse_rational(val.trim())?),
                other => return Err(Error::Parse(format!("unknown weight key `{other}`"))),
            }
        }
        let order = order.ok_or_else(|| Error::Parse("missing m=".into()))?;
        let scale = scale.ok_or_else(|| Error::Parse("missing s=".into()))?;
        BSplineWeight::new(order, scale)
    }
}

fn parse_rational(s: &str) -> Result<Rational64> {
    let bad = |e: std::num::ParseIntError| Error::Parse(format!("rational `{s}`: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.trim().parse().map_err(bad)?;
            if d == 0 {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(Rational64::new(n.trim().parse().map_err(bad)?, d))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(bad)?)),
    }
}

impl TryFrom<String> for WeightSystem {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        let comps = s.split(';').map(str::parse).collect::<Result<Vec<BSplineWeight>>>()?;
        WeightSystem::new(comps)
    }
}

impl From<WeightSystem> for String {
    fn from(w: WeightSystem) -> String {
        w.components.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";")
    }
}

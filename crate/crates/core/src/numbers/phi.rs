//! Rate functions `phi`, the inverse `L` of `H -> H phi(H)`, and fitting a rate
//! to a finite badness scan.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::badness::ApproxRecord;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum PhiFunction {
    Constant { c: f64 },
    /// `max(1, c (log x)^a (log log x)^b)` with every `log` floored at 1.
    LogPower { c: f64, a: f64, b: f64 },
}

/// `max(1, ln x)`.
pub fn log1(x: f64) -> f64 {
    x.ln().max(1.0)
}

impl PhiFunction {
    pub fn constant(c: f64) -> Result<Self> {
        if !(c >= 1.0) || !c.is_finite() {
            return Err(Error::InvalidInput(format!("constant phi needs C >= 1, got {c}")));
        }
        Ok(PhiFunction::Constant { c })
    }

    pub fn log_power(c: f64, a: f64, b: f64) -> Result<Self> {
        if !(c > 0.0) || !(a >= 0.0) || !(b >= 0.0) || !(c * a * b).is_finite() {
            return Err(Error::InvalidInput(format!("log-power phi needs c > 0, a, b >= 0; got {c}, {a}, {b}")));
        }
        Ok(PhiFunction::LogPower { c, a, b })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            PhiFunction::Constant { c } => c,
            PhiFunction::LogPower { c, a, b } => {
                let l = log1(x);
                (c * l.powf(a) * log1(l).powf(b)).max(1.0)
            }
        }
    }

    /// `limsup phi(2x) / phi(x)`; equal to 1 for the whole family.
    pub fn doubling(&self) -> f64 {
        1.0
    }

    /// The height `H >= 1` with `H phi(H) = x`.
    pub fn invert_l(&self, x: f64) -> Result<f64> {
        let floor = self.eval(1.0);
        if !(x >= floor) {
            return Err(Error::Domain(format!("L(x) needs x >= phi(1) = {floor}, got {x}")));
        }
        if let PhiFunction::Constant { c } = *self {
            return Ok((x / c).clamp(1.0, x));
        }
        let g = |h: f64| h * self.eval(h);
        let (mut lo, mut hi) = (1.0f64, x);
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let v = g(mid);
            if (v - x).abs() <= 1e-12 * x {
                return Ok(mid);
            }
            if v < x {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // adjacent doubles: return whichever side has the smaller residual
        Ok(if (g(lo) - x).abs() <= (g(hi) - x).abs() { lo } else { hi })
    }
}

impl fmt::Display for PhiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiFunction::Constant { c } => write!(f, "const:{c}"),
            PhiFunction::LogPower { c, a, b } => write!(f, "logpow:{c},{a},{b}"),
        }
    }
}

impl FromStr for PhiFunction {
    type Err = Error;

    /// `const:C`, `logpow:c,a,b` or `log` (= `logpow:1,1,0`).
    fn from_str(s: &str) -> Result<Self> {
        let num = |t: &str| -> Result<f64> {
            t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("number `{t}` in phi spec `{s}`")))
        };
        let s = s.trim();
        if s == "log" {
            return PhiFunction::log_power(1.0, 1.0, 0.0);
        }
        if let Some(c) = s.strip_prefix("const:") {
            return PhiFunction::constant(num(c)?);
        }
        if let Some(rest) = s.strip_prefix("logpow:") {
            let v = rest.split(',').map(num).collect::<Result<Vec<_>>>()?;
            if v.len() != 3 {
                return Err(Error::Parse(format!("`{s}`: expected logpow:c,a,b")));
            }
            return PhiFunction::log_power(v[0], v[1], v[2]);
        }
        Err(Error::Parse(format!("unknown phi spec `{s}`")))
    }
}

/// Exponent pairs `(a, b)` tried after the constant family, in order.
pub const LOG_POWER_GRID: [(f64, f64); 8] =
    [(0.5, 0.0), (0.5, 1.0), (1.0, 0.0), (1.0, 1.0), (1.5, 0.0), (1.5, 1.0), (2.0, 0.0), (2.0, 1.0)];

#[derive(Clone, Debug, Serialize)]
pub struct PhiFit {
    pub phi: PhiFunction,
    /// Mean of `ln(H phi(H) ||m . alpha||)` over the running minima; zero
    /// would mean `phi` tracks the scan exactly.
    pub mean_log_slack: f64,
    /// The fit is only certified on heights up to this bound.
    pub verified_height: u64,
}

/// Chooses the family member that hugs the running minima most tightly.
///
/// Every member is first scaled to the least `c` for which
/// `H phi(H) ||m . alpha|| >= 1` holds on each record. Among those, the member
/// with the smallest mean log-slack over the records wins; ties go to the
/// earlier member (constant first, then the grid order).
pub fn fit_phi(records: &[ApproxRecord]) -> Result<PhiFit> {
    if records.is_empty() {
        return Err(Error::InvalidInput("no records to fit".into()));
    }
    let verified_height = records.iter().map(|r| r.height).max().unwrap_or(1);
    let need = |r: &ApproxRecord| 1.0 / r.quality;
    let c_const = records.iter().map(need).fold(1.0f64, f64::max);
    let mut candidates = vec![PhiFunction::Constant { c: c_const }];
    for &(a, b) in &LOG_POWER_GRID {
        let shape = |h: f64| {
            let l = log1(h);
            l.powf(a) * log1(l).powf(b)
        };
        let c = records
            .iter()
            .filter(|r| need(r) > 1.0)
            .map(|r| need(r) / shape(r.height as f64))
            .fold(0.0f64, f64::max);
        if c > 0.0 && c.is_finite() {
            candidates.push(PhiFunction::LogPower { c, a, b });
        }
    }
    let slack = |phi: &PhiFunction| {
        records.iter().map(|r| (r.quality * phi.eval(r.height as f64)).ln()).sum::<f64>() / records.len() as f64
    };
    let mut best: Option<(f64, PhiFunction)> = None;
    for phi in candidates {
        let s = slack(&phi);
        // relative guard so rounding in c cannot reorder exact ties
        if best.as_ref().is_none_or(|(bs, _)| s < bs - 1e-12) {
            best = Some((s, phi));
        }
    }
    let (mean_log_slack, phi) = best.expect("constant candidate always present");
    Ok(PhiFit { phi, mean_log_slack, verified_height })
}

//! Bohr sets `(L - g) ∩ P_(rho, N)` and the uncertainty set of a box.

use serde::Serialize;

use super::enumerate::{enumerate_box, BoxPoint};
use super::{Lattice, SymBox};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct BohrSet {
    pub shift: Vec<f64>,
    pub horizon: f64,
    pub radii: Vec<f64>,
    pub points: Vec<BoxPoint>,
    /// `2^k rho_1 ... rho_d N`.
    pub vol: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BohrCount {
    pub count: usize,
    pub vol: f64,
    pub ratio: f64,
}

fn check_radii(lat: &Lattice, horizon: f64, radii: &[f64]) -> Result<()> {
    if radii.len() + 1 != lat.k() {
        return Err(Error::InvalidInput(format!("need {} radii, got {}", lat.k() - 1, radii.len())));
    }
    if let Some(r) = radii.iter().find(|&&r| !(r > 0.0 && r < 0.5)) {
        return Err(Error::InvalidInput(format!("radius {r} not in (0, 1/2)")));
    }
    if !(horizon > 0.0) {
        return Err(Error::InvalidInput(format!("horizon {horizon} must be positive")));
    }
    Ok(())
}

pub fn bohr_set(lat: &Lattice, shift: &[f64], horizon: f64, radii: &[f64]) -> Result<BohrSet> {
    check_radii(lat, horizon, radii)?;
    let mut s = radii.to_vec();
    s.push(horizon);
    let points = enumerate_box(lat, &SymBox::new(s)?, shift)?;
    let vol = 2f64.powi(lat.k() as i32) * radii.iter().product::<f64>() * horizon;
    Ok(BohrSet { shift: shift.to_vec(), horizon, radii: radii.to_vec(), points, vol })
}

pub fn bohr_count(lat: &Lattice, shift: &[f64], horizon: f64, radii: &[f64]) -> Result<BohrCount> {
    let b = bohr_set(lat, shift, horizon, radii)?;
    Ok(BohrCount { count: b.points.len(), vol: b.vol, ratio: b.points.len() as f64 / b.vol })
}

/// Nonzero dual points `(lambda, lambda_k)` with `|lambda_i| <= 1 / rho_i` and
/// `|lambda_k| <= 1 / N`. Returns them; an empty list means the set is empty.
pub fn uncertainty_set_empty(dual: &Lattice, horizon: f64, radii: &[f64]) -> Result<(bool, Vec<BoxPoint>)> {
    check_radii(dual, horizon, radii)?;
    let mut s: Vec<f64> = radii.iter().map(|r| 1.0 / r).collect();
    s.push(1.0 / horizon);
    let pts: Vec<BoxPoint> = enumerate_box(dual, &SymBox::new(s)?, &vec![0.0; dual.k()])?
        .into_iter()
        .filter(|p| p.coeffs.iter().any(|&c| c != 0))
        .collect();
    Ok((pts.is_empty(), pts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::dani_lattice;
    use crate::numbers::RealAlgebraic;
    use nalgebra::DMatrix;

    #[test]
    fn integer_lattice_count() {
        let z = Lattice::new(DMatrix::identity(3, 3)).unwrap();
        let c = bohr_count(&z, &[0.0; 3], 100.0, &[0.4, 0.4]).unwrap();
        assert_eq!(c.count, 201);
        assert_eq!(c.vol, 8.0 * 0.4 * 0.4 * 100.0);
        assert_eq!(c.ratio, 201.0 / c.vol);
    }

    #[test]
    fn radii_validated() {
        let z = Lattice::new(DMatrix::identity(2, 2)).unwrap();
        assert!(bohr_count(&z, &[0.0; 2], 10.0, &[0.5]).is_err());
        assert!(bohr_count(&z, &[0.0; 2], 10.0, &[0.1, 0.1]).is_err());
    }

    #[test]
    fn golden_uncertainty_set() {
        let g = dani_lattice(&[RealAlgebraic::golden()]).unwrap();
        let dual = g.dual().unwrap();
        // rho N well above 1/min_m m||m phi||: empty
        let (empty, _) = uncertainty_set_empty(&dual, 1000.0, &[0.01]).unwrap();
        assert!(empty);
        // rho N = 0.1: the Fibonacci approximations land inside
        let (empty, pts) = uncertainty_set_empty(&dual, 1000.0, &[1e-4]).unwrap();
        assert!(!empty && !pts.is_empty());
    }
}

//! Lattices `A Z^k`, their duals, and geometry-of-numbers tools.

mod bohr;
mod construct;
mod enumerate;
mod minima;

pub use bohr::{bohr_count, bohr_set, uncertainty_set_empty, BohrCount, BohrSet};
pub use construct::{dani_lattice, minkowski_lattice, parse_lattice, MinkowskiLattice};
pub use enumerate::{enumerate_box, enumerate_box_with_budget, lll_reduce, BoxPoint, DEFAULT_BUDGET};
pub use minima::{
    blichfeldt_constant, box_norm, dual_body_norm, in_box, in_polar_box, shortest_in_box, shortest_in_dual_body,
    successive_minima, Minimum,
};

use nalgebra::DMatrix;
use serde::Serialize;

use crate::dd::Dd;
use crate::error::{Error, Result};
use crate::numbers::RealAlgebraic;

/// Relative slack on coordinates for every membership test; boundary points
/// are kept.
pub const MEMBERSHIP_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Provenance {
    /// Basis `[[I, alpha], [0, 1]]`.
    Dani(Vec<RealAlgebraic>),
    /// Basis `[[I, 0], [-alpha^T, 1]]`, the dual of `Dani(alpha)`.
    DaniDual(Vec<RealAlgebraic>),
    /// Minkowski embedding of `Z[theta]`, divided by `|det|^(1/k)` when rescaled.
    Minkowski { field: String, rescaled: bool },
    MinkowskiDual { field: String, rescaled: bool },
    Explicit,
}

#[derive(Clone, Debug)]
pub struct Lattice {
    basis: DMatrix<f64>,
    inverse: DMatrix<f64>,
    det_abs: f64,
    provenance: Provenance,
    // double-double alpha for the two Dani shapes
    alpha: Vec<Dd>,
}

impl Lattice {
    /// Lattice spanned by the columns of `basis`.
    pub fn new(basis: DMatrix<f64>) -> Result<Self> {
        Self::with_provenance(basis, Provenance::Explicit)
    }

    /// Row-major `k x k` entries.
    pub fn from_rows(k: usize, rows: &[f64]) -> Result<Self> {
        if rows.len() != k * k {
            return Err(Error::InvalidInput(format!("expected {} entries, got {}", k * k, rows.len())));
        }
        Self::new(DMatrix::from_row_slice(k, k, rows))
    }

    pub(crate) fn with_provenance(basis: DMatrix<f64>, provenance: Provenance) -> Result<Self> {
        if basis.nrows() != basis.ncols() || basis.nrows() == 0 {
            return Err(Error::InvalidInput("basis must be square".into()));
        }
        if basis.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidInput("basis has non-finite entries".into()));
        }
        let det = basis.determinant();
        let inverse = basis.clone().try_inverse().ok_or(Error::SingularBasis)?;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::SingularBasis);
        }
        let alpha = match &provenance {
            Provenance::Dani(a) | Provenance::DaniDual(a) => a.iter().map(|x| x.to_dd()).collect(),
            _ => Vec::new(),
        };
        Ok(Lattice { basis, inverse, det_abs: det.abs(), provenance, alpha })
    }

    pub fn k(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn det_abs(&self) -> f64 {
        self.det_abs
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_unimodular(&self) -> bool {
        (self.det_abs - 1.0).abs() <= 1e-9
    }

    /// 2-norm condition number of the basis.
    pub fn condition_number(&self) -> f64 {
        let sv = self.basis.clone().singular_values();
        let max = sv.iter().cloned().fold(0.0, f64::max);
        let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
        max / min
    }

    /// `A c`. Dani shapes are evaluated in double-double so that
    /// `c_i + alpha_i c_k` keeps full relative precision near zero.
    pub fn point(&self, c: &[i64]) -> Vec<f64> {
        let k = self.k();
        match self.provenance {
            Provenance::Dani(_) => {
                let ck = c[k - 1];
                let mut p: Vec<f64> = (0..k - 1)
                    .map(|i| (self.alpha[i].mul_i64(ck) + Dd::from_f64(c[i] as f64)).to_f64())
                    .collect();
                p.push(ck as f64);
                p
            }
            Provenance::DaniDual(_) => {
                let mut acc = Dd::from_f64(c[k - 1] as f64);
                for i in 0..k - 1 {
                    acc = acc - self.alpha[i].mul_i64(c[i]);
                }
                let mut p: Vec<f64> = c[..k - 1].iter().map(|&x| x as f64).collect();
                p.push(acc.to_f64());
                p
            }
            _ => (0..k)
                .map(|i| {
                    let mut s = crate::sum::CompensatedSum::new();
                    for j in 0..k {
                        s.add(self.basis[(i, j)] * c[j] as f64);
                    }
                    s.value()
                })
                .collect(),
        }
    }

    /// Double-double `alpha` when this is a Dani lattice `[[I, alpha], [0, 1]]`.
    pub fn dani_alpha(&self) -> Option<&[Dd]> {
        match self.provenance {
            Provenance::Dani(_) => Some(&self.alpha),
            _ => None,
        }
    }

    /// `A^{-1} p`.
    pub fn coords(&self, p: &[f64]) -> Vec<f64> {
        let k = self.k();
        (0..k).map(|i| (0..k).map(|j| self.inverse[(i, j)] * p[j]).sum()).collect()
    }

    /// The dual lattice `(A^{-1})^T Z^k`. Dani shapes map to each other
    /// exactly.
    pub fn dual(&self) -> Result<Lattice> {
        match &self.provenance {
            Provenance::Dani(a) => dani_dual_shape(a, true),
            Provenance::DaniDual(a) => dani_dual_shape(a, false),
            p => {
                let prov = match p {
                    Provenance::Minkowski { field, rescaled } => {
                        Provenance::MinkowskiDual { field: field.clone(), rescaled: *rescaled }
                    }
                    Provenance::MinkowskiDual { field, rescaled } => {
                        Provenance::Minkowski { field: field.clone(), rescaled: *rescaled }
                    }
                    _ => Provenance::Explicit,
                };
                Lattice::with_provenance(self.inverse.transpose(), prov)
            }
        }
    }

    /// Short label used in reports.
    pub fn label(&self) -> String {
        let join = |a: &[RealAlgebraic]| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match &self.provenance {
            Provenance::Dani(a) => format!("dani:{}", join(a)),
            Provenance::DaniDual(a) => format!("dani-dual:{}", join(a)),
            Provenance::Minkowski { field, rescaled } => {
                format!("minkowski-primal:{field}{}", if *rescaled { "" } else { " (unscaled)" })
            }
            Provenance::MinkowskiDual { field, rescaled } => {
                format!("minkowski:{field}{}", if *rescaled { "" } else { " (unscaled)" })
            }
            Provenance::Explicit => format!("explicit:{}x{}", self.k(), self.k()),
        }
    }
}

/// `[[I, alpha], [0, 1]]` (primal) or `[[I, 0], [-alpha^T, 1]]`.
fn dani_dual_shape(alpha: &[RealAlgebraic], to_dual: bool) -> Result<Lattice> {
    let d = alpha.len();
    let k = d + 1;
    let mut m = DMatrix::<f64>::identity(k, k);
    for (i, a) in alpha.iter().enumerate() {
        if to_dual {
            m[(d, i)] = -a.to_f64();
        } else {
            m[(i, d)] = a.to_f64();
        }
    }
    let prov = if to_dual { Provenance::DaniDual(alpha.to_vec()) } else { Provenance::Dani(alpha.to_vec()) };
    Lattice::with_provenance(m, prov)
}

/// Symmetric box `[-s_1, s_1] x ... x [-s_k, s_k]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymBox {
    s: Vec<f64>,
}

impl SymBox {
    pub fn new(s: Vec<f64>) -> Result<Self> {
        if s.is_empty() || s.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidInput(format!("box radii must be positive and finite: {s:?}")));
        }
        Ok(SymBox { s })
    }

    pub fn cube(k: usize, r: f64) -> Result<Self> {
        Self::new(vec![r; k])
    }

    pub fn radii(&self) -> &[f64] {
        &self.s
    }

    pub fn k(&self) -> usize {
        self.s.len()
    }

    pub fn volume(&self) -> f64 {
        self.s.iter().map(|x| 2.0 * x).product()
    }

    pub fn scaled(&self, t: f64) -> Result<SymBox> {
        SymBox::new(self.s.iter().map(|x| x * t).collect())
    }

    /// The box with reciprocal radii.
    pub fn reciprocal(&self) -> SymBox {
        SymBox { s: self.s.iter().map(|x| 1.0 / x).collect() }
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        in_box(&self.s, p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    pub(crate) fn random_unimodular(k: usize, rng: &mut impl Rng) -> Lattice {
        loop {
            let m = DMatrix::from_fn(k, k, |_, _| rng.gen_range(-1.5..1.5));
            let det: f64 = m.determinant();
            if det.abs() < 0.2 {
                continue;
            }
            let scaled = m / det.abs().powf(1.0 / k as f64);
            return Lattice::new(scaled).unwrap();
        }
    }

    #[test]
    fn identity_is_self_dual() {
        let z = Lattice::new(DMatrix::identity(3, 3)).unwrap();
        assert_eq!(z.dual().unwrap().basis(), &DMatrix::<f64>::identity(3, 3));
    }

    #[test]
    fn dani_dual_matches_inverse_transpose() {
        let g = dani_lattice(&[RealAlgebraic::golden()]).unwrap();
        let d = g.dual().unwrap();
        let generic = g.inverse().transpose();
        for (a, b) in d.basis().iter().zip(generic.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
        assert_eq!(d.basis()[(1, 0)], -RealAlgebraic::golden().to_f64());
        assert!(matches!(d.dual().unwrap().provenance(), Provenance::Dani(_)));
    }

    #[test]
    fn singular_basis_rejected() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(Lattice::new(m), Err(Error::SingularBasis)));
    }

    #[test]
    fn dual_pairing_is_integral() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let lat = random_unimodular(3, &mut rng);
            let dual = lat.dual().unwrap();
            let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-20..=20)).collect();
            let e: Vec<i64> = (0..3).map(|_| rng.gen_range(-20..=20)).collect();
            let p = lat.point(&c);
            let q = dual.point(&e);
            let ip: f64 = p.iter().zip(&q).map(|(a, b)| a * b).sum();
            assert!((ip - ip.round()).abs() < 1e-9, "pairing {ip}");
        }
    }

    #[test]
    fn double_dual_same_points() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(12);
        let lat = random_unimodular(3, &mut rng);
        let dd = lat.dual().unwrap().dual().unwrap();
        for _ in 0..100 {
            let c: Vec<i64> = (0..3).map(|_| rng.gen_range(-50..=50)).collect();
            let p = lat.point(&c);
            let back = dd.coords(&p);
            for x in back {
                assert!((x - x.round()).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn dani_point_is_accurate() {
        let g = dani_lattice(&[RealAlgebraic::golden()]).unwrap();
        // F_30 phi - F_31 is tiny; plain f64 loses all but a few digits
        let p = g.point(&[-1_346_269, 832_040]);
        let want = -1.0 / (832_040.0 * 5f64.sqrt()) * (1.0 - 1.0 / (5.0 * 832_040f64.powi(2)));
        assert!(((p[0] - want) / want).abs() < 1e-9, "{} vs {want}", p[0]);
    }
}

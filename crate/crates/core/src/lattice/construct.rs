//! Dani and Minkowski lattices, and the lattice spec parser.

use nalgebra::DMatrix;
use serde::Serialize;

use super::{Lattice, Provenance};
use crate::error::{Error, Result};
use crate::numbers::RealAlgebraic;

/// `[[I_d, alpha], [0, 1]]`, determinant exactly 1.
pub fn dani_lattice(alpha: &[RealAlgebraic]) -> Result<Lattice> {
    if alpha.is_empty() {
        return Err(Error::InvalidInput("Dani lattice needs d >= 1".into()));
    }
    let d = alpha.len();
    let mut m = DMatrix::<f64>::identity(d + 1, d + 1);
    for (i, a) in alpha.iter().enumerate() {
        m[(i, d)] = a.to_f64();
    }
    Lattice::with_provenance(m, Provenance::Dani(alpha.to_vec()))
}

#[derive(Clone, Debug, Serialize)]
pub struct MinkowskiLattice {
    #[serde(skip)]
    pub lattice: Lattice,
    #[serde(skip)]
    pub unscaled: Lattice,
    /// `|det|` of the unscaled embedding; its square is the discriminant.
    pub det_unscaled: f64,
    /// Exact polynomial discriminant.
    pub discriminant: i64,
    /// Real embeddings of `theta`, largest first.
    pub conjugates: [f64; 3],
}

/// Minkowski embedding of `Z[theta]` for a totally real cubic `theta`:
/// column `i` is `(sigma_1(theta^i), sigma_2(theta^i), sigma_3(theta^i))`. The
/// unimodular version divides by `|det|^(1/3)`.
pub fn minkowski_lattice(field: &str) -> Result<MinkowskiLattice> {
    let root = match field.parse::<RealAlgebraic>()? {
        RealAlgebraic::Cubic(c) => c,
        other => return Err(Error::InvalidInput(format!("`{other}` is not a cubic field generator"))),
    };
    let conj = root.conjugates()?;
    let [a, b, c] = root.coeffs().map(|x| x as i128);
    let disc = a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
    let m = DMatrix::from_fn(3, 3, |j, i| conj[j].powi(i as i32));
    let det = m.determinant().abs();
    let unscaled = Lattice::with_provenance(m.clone(), Provenance::Minkowski { field: field.to_string(), rescaled: false })?;
    let lattice = Lattice::with_provenance(m / det.cbrt(), Provenance::Minkowski { field: field.to_string(), rescaled: true })?;
    Ok(MinkowskiLattice {
        lattice,
        unscaled,
        det_unscaled: det,
        discriminant: i64::try_from(disc).map_err(|_| Error::InvalidInput("discriminant overflow".into()))?,
        conjugates: conj,
    })
}

/// Parses a lattice spec.
///
/// - `dani:a1+a2+...`: Dani lattice of the listed reals (see `RealAlgebraic`).
/// - `minkowski:cubic:7`: the unimodular lattice whose dual is the rescaled
///   Minkowski embedding of the ring of integers, so that dual points carry the
///   norm-form lower bound.
/// - `minkowski-primal:cubic:7`: the rescaled embedding itself.
/// - `explicit:r11,r12;r21,r22`: row-major basis.
pub fn parse_lattice(spec: &str) -> Result<Lattice> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("dani:") {
        let alpha = rest.split('+').map(str::parse).collect::<Result<Vec<RealAlgebraic>>>()?;
        return dani_lattice(&alpha);
    }
    if let Some(rest) = spec.strip_prefix("minkowski-primal:") {
        return Ok(minkowski_lattice(rest)?.lattice);
    }
    if let Some(rest) = spec.strip_prefix("minkowski:") {
        return minkowski_lattice(rest)?.lattice.dual();
    }
    if let Some(rest) = spec.strip_prefix("explicit:") {
        let rows: Vec<Vec<f64>> = rest
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Parse(format!("matrix entry `{x}` in `{spec}`"))))
                    .collect()
            })
            .collect::<Result<_>>()?;
        let k = rows.len();
        if rows.iter().any(|r| r.len() != k) {
            return Err(Error::Parse(format!("`{spec}`: matrix must be square")));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        return Lattice::from_rows(k, &flat);
    }
    Err(Error::Parse(format!("unknown lattice spec `{spec}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dani_examples() {
        let z = dani_lattice(&[RealAlgebraic::rational(0, 1).unwrap()]).unwrap();
        assert_eq!(z.basis(), &DMatrix::<f64>::identity(2, 2));
        let g = dani_lattice(&[RealAlgebraic::golden()]).unwrap();
        assert_eq!(g.basis()[(0, 1)], RealAlgebraic::golden().to_f64());
        assert_eq!(g.det_abs(), 1.0);
        let c = parse_lattice("dani:cubic:7+cubic:7^2").unwrap();
        assert_eq!(c.k(), 3);
        assert_eq!(c.det_abs(), 1.0);
        assert_eq!(c.basis()[(2, 0)], 0.0);
        assert_eq!(c.basis()[(2, 1)], 0.0);
    }

    #[test]
    fn cubic7_discriminant() {
        let m = minkowski_lattice("cubic:7").unwrap();
        assert_eq!(m.discriminant, 49);
        assert!((m.det_unscaled.powi(2) - 49.0).abs() < 1e-9);
        assert!((m.lattice.det_abs() - 1.0).abs() < 1e-12);
        assert!(matches!(minkowski_lattice("cubic:0,0,-2"), Err(Error::NotTotallyReal(_))));
        assert!(matches!(minkowski_lattice("golden"), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn parse_specs() {
        let e = parse_lattice("explicit:2,0;0,0.5").unwrap();
        assert_eq!(e.det_abs(), 1.0);
        assert!(parse_lattice("explicit:1,2;3").is_err());
        assert!(parse_lattice("nope").is_err());
        let dual = parse_lattice("minkowski:cubic:7").unwrap();
        assert!((dual.det_abs() - 1.0).abs() < 1e-12);
    }
}

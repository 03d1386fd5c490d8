//! Normalizing hyperplanes and the quadratic-guided simple-cone decomposition.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, EchelonBasis, QMatrix, QVector, Rational};
use crate::polyhedra::{h_to_v, HPolyhedron, SimpleCone};
use crate::qp::min_on_simple_slice;

/// `{x : f^T x = 1}` with `f^T r >= 1` on every generator `r` of its cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizingHyperplane {
    pub f: QVector,
    /// Generators after padding with unit vectors to full dimension.
    pub augmented: Vec<QVector>,
}

/// Builds a normalizing hyperplane for the pointed cone spanned by `rays`.
///
/// The rays are padded with the first unit vectors that raise the rank until
/// the cone is full-dimensional; `f` is the lexicographically smallest vertex
/// of `{w : w^T r >= 1 for every padded generator r}`.
pub fn normalizing_hyperplane(n: usize, rays: &[QVector]) -> Result<NormalizingHyperplane> {
    if let Some(bad) = rays.iter().find(|r| r.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    let mut augmented: Vec<QVector> = rays.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut basis = EchelonBasis::default();
    for r in &augmented {
        basis.push(r, &Rational::zero());
    }
    for i in 0..n {
        if basis.len() == n {
            break;
        }
        let e = QVector::unit(n, i);
        if basis.push(&e, &Rational::zero()) {
            augmented.push(e);
        }
    }
    let mut poly = HPolyhedron::universe(n);
    for r in &augmented {
        poly.push_row(r.neg(), rat(-1));
    }
    let v = h_to_v(&poly)?;
    // no vertex: the generators admit no strictly positive functional
    let f = v
        .first_vertex()
        .cloned()
        .ok_or(Error::NotPointed { rank: basis.len(), dim: n })?;
    for r in rays {
        if !r.is_zero() && f.dot(r) < rat(1) {
            return Err(Error::Internal(format!("hyperplane {f} fails on generator {r}")));
        }
    }
    Ok(NormalizingHyperplane { f, augmented })
}

/// A covering of a simple cone by simple cones of the same dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDecomposition {
    pub pieces: Vec<SimpleCone>,
    pub hyperplane: QVector,
}

/// Splits a simple cone on which `x^T H x >= 0` into simple cones so that
/// every face with zero minimum on the slice has a generator `v` with
/// `v^T H v = 0`.
///
/// Recursive: minimize over the slice; a positive minimum keeps the cone.
/// At a zero minimum `x`, every facet not containing `x` is decomposed and
/// each of its pieces is coned with `x` (scaled to a primitive integral
/// vector).
pub fn simple_cone_decomposition(h: &QMatrix, cone: &SimpleCone) -> Result<ConeDecomposition> {
    let n = cone.ambient_dim();
    if h.rows() != n || h.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: h.rows(),
        });
    }
    let f = normalizing_hyperplane(n, cone.rays())?.f;
    let pieces = decompose(h, cone.rays().to_vec(), &f, 0, n)?;
    let pieces = pieces
        .into_iter()
        .map(|rays| SimpleCone::new(n, rays))
        .collect::<Result<Vec<_>>>()?;
    Ok(ConeDecomposition {
        pieces,
        hyperplane: f,
    })
}

fn decompose(h: &QMatrix, rays: Vec<QVector>, f: &QVector, depth: usize, n: usize) -> Result<Vec<Vec<QVector>>> {
    assert!(depth <= n, "decomposition recursion deeper than the dimension");
    if rays.len() <= 1 {
        if let Some(r) = rays.first() {
            let value = h.bilinear(r, r);
            if value.is_negative() {
                return Err(Error::NegativeOnCone {
                    minimum: value.to_string(),
                });
            }
        }
        return Ok(vec![rays]);
    }
    let cone = SimpleCone::new(n, rays.clone())?;
    let min = min_on_simple_slice(h, &cone, f)?;
    if min.result.value.is_positive() {
        return Ok(vec![rays]);
    }
    if min.result.value.is_negative() {
        return Err(Error::NegativeOnCone {
            minimum: min.result.value.to_string(),
        });
    }
    let apex = min.result.minimizer.primitive();
    let mut pieces = Vec::new();
    for (i, mu) in min.multipliers.iter().enumerate() {
        if mu.is_zero() {
            continue;
        }
        let facet: Vec<QVector> = rays
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, r)| r.clone())
            .collect();
        for mut piece in decompose(h, facet, f, depth + 1, n)? {
            piece.push(apex.clone());
            pieces.push(piece);
        }
    }
    Ok(pieces)
}

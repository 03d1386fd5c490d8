//! Exact global minimization of a quadratic over a polytope.
//!
//! A global minimizer lies in the relative interior of some face and is a
//! stationary point of the quadratic restricted to that face's affine hull.
//! The kernel enumerates every linearly independent set of constraint rows,
//! takes the rows as equalities, and solves the stationarity system on the
//! resulting affine subspace. When the stationary set is a positive
//! dimensional affine space the quadratic is constant on it, and any of its
//! feasible points (here: the vertices of its intersection with the polytope)
//! is an equally good candidate. The best feasible candidate is the answer.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, solve_linear_system, LinearSolution, QMatrix, QVector, Rational};
use crate::polyhedra::{collect_independent_upto, h_to_v, is_empty, vertices, HPolyhedron, SimpleCone};

/// `x^T H x + c^T x + d` with `H` symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    h: QMatrix,
    c: QVector,
    d: Rational,
}

impl QuadraticForm {
    pub fn new(h: QMatrix, c: QVector, d: Rational) -> Result<Self> {
        if h.rows() != h.cols() {
            return Err(Error::DimensionMismatch {
                expected: h.rows(),
                found: h.cols(),
            });
        }
        if c.dim() != h.rows() {
            return Err(Error::DimensionMismatch {
                expected: h.rows(),
                found: c.dim(),
            });
        }
        if let Some((i, j)) = h.asymmetry() {
            return Err(Error::NotSymmetric {
                row: i + 1,
                col: j + 1,
                upper: h.get(i, j).to_string(),
                lower: h.get(j, i).to_string(),
            });
        }
        Ok(QuadraticForm { h, c, d })
    }

    /// The pure form `x^T H x`.
    pub fn homogeneous(h: QMatrix) -> Result<Self> {
        let n = h.rows();
        Self::new(h, QVector::zeros(n), Rational::zero())
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    pub fn h(&self) -> &QMatrix {
        &self.h
    }

    pub fn c(&self) -> &QVector {
        &self.c
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn eval(&self, x: &QVector) -> Result<Rational> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(self.h.bilinear(x, x) + self.c.dot(x) + &self.d)
    }

    /// `2 H x + c`
    pub fn gradient(&self, x: &QVector) -> QVector {
        let hx = self.h.mul_vec(x).expect("dims");
        hx.scale(&rat(2)).add(&self.c)
    }

    /// The form `y -> Q(x0 + sum_j y_j dirs[j])`.
    pub fn restrict_affine(&self, x0: &QVector, dirs: &[QVector]) -> QuadraticForm {
        let n = self.dim();
        let k = dirs.len();
        let hd: Vec<QVector> = dirs.iter().map(|d| self.h.mul_vec(d).expect("dims")).collect();
        let mut h = QMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = dirs[i].dot(&hd[j]);
                h.set(j, i, v.clone());
                h.set(i, j, v);
            }
        }
        let grad = self.gradient(x0);
        let c = dirs.iter().map(|d| d.dot(&grad)).collect();
        debug_assert_eq!(x0.dim(), n);
        let d = self.eval(x0).expect("dims");
        QuadraticForm { h, c, d }
    }

    /// Restriction to `x = (y, z)` with the leading coordinates fixed to `y`.
    pub fn fix_leading(&self, y: &[Rational]) -> QuadraticForm {
        let n = self.dim();
        let k = y.len();
        let mut x0 = QVector::zeros(n);
        for (i, v) in y.iter().enumerate() {
            x0.set(i, v.clone());
        }
        let dirs: Vec<QVector> = (k..n).map(|i| QVector::unit(n, i)).collect();
        self.restrict_affine(&x0, &dirs)
    }

    /// Restriction to `x = shift + (0, z)`: the leading `k` coordinates are
    /// held at `shift` and only the trailing ones vary.
    pub fn fix_leading_shifted(&self, k: usize, shift: &QVector) -> QuadraticForm {
        let n = self.dim();
        let dirs: Vec<QVector> = (k..n).map(|i| QVector::unit(n, i)).collect();
        self.restrict_affine(shift, &dirs)
    }

    pub fn scale(&self, s: &Rational) -> QuadraticForm {
        QuadraticForm {
            h: self.h.scale(s),
            c: self.c.scale(s),
            d: &self.d * s,
        }
    }
}

pub fn eval_quadratic(q: &QuadraticForm, x: &QVector) -> Result<Rational> {
    q.eval(x)
}

/// A global minimizer with its value and the constraints tight at it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QpResult {
    pub minimizer: QVector,
    pub value: Rational,
    pub active_set: Vec<usize>,
}

fn candidate_order(a: &(Rational, QVector), b: &(Rational, QVector)) -> Ordering {
    a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1))
}

/// Vertices of `{z : A (x1 + N z) <= b}`, mapped back to `x`.
fn stationary_face_points(p: &HPolyhedron, x1: &QVector, dirs: &[QVector]) -> Vec<QVector> {
    let k = dirs.len();
    let rows: Vec<QVector> = (0..p.num_constraints())
        .map(|i| dirs.iter().map(|d| p.a().row_dot(i, d)).collect())
        .collect();
    let a = QMatrix::from_rows(k, rows).expect("widths");
    let b: QVector = (0..p.num_constraints()).map(|i| p.slack(i, x1)).collect();
    let sub = HPolyhedron::new(a, b).expect("dims");
    // empty or (impossibly, for a bounded P) unbounded
    let Ok(zs) = vertices(&sub) else {
        return Vec::new();
    };
    zs.iter()
        .map(|z| {
            dirs.iter()
                .zip(z.iter())
                .fold(x1.clone(), |acc, (d, zj)| acc.add_scaled(zj, d))
        })
        .collect()
}

/// Exact global minimum of `q` over the compact polyhedron `p`.
///
/// Ties are broken towards the lexicographically smallest minimizer.
pub fn qp_global_min(q: &QuadraticForm, p: &HPolyhedron) -> Result<QpResult> {
    let n = p.dim();
    if q.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: q.dim(),
        });
    }
    match h_to_v(p) {
        Err(Error::NotPointed { .. }) => {
            return Err(if is_empty(p) { Error::Empty } else { Error::Unbounded });
        }
        Err(e) => return Err(e),
        Ok(v) if v.is_empty() => return Err(Error::Empty),
        Ok(v) if !v.is_bounded() => return Err(Error::Unbounded),
        Ok(_) => {}
    }

    let candidates = collect_independent_upto(p.a(), p.b(), n, &|basis, _rows| {
        let (x0, dirs) = basis.affine_parametrization(n);
        let points = if dirs.is_empty() {
            vec![x0]
        } else {
            let reduced = q.restrict_affine(&x0, &dirs);
            let twice_h = reduced.h.scale(&rat(2));
            match solve_linear_system(&twice_h, &reduced.c.neg()).expect("square system") {
                LinearSolution::Infeasible => Vec::new(),
                LinearSolution::Unique(y) => vec![combine(&x0, &dirs, &y)],
                LinearSolution::Affine {
                    particular,
                    nullspace,
                } => {
                    let x1 = combine(&x0, &dirs, &particular);
                    let dirs2: Vec<QVector> =
                        nullspace.iter().map(|k| combine(&QVector::zeros(n), &dirs, k)).collect();
                    stationary_face_points(p, &x1, &dirs2)
                }
            }
        };
        points
            .into_iter()
            .filter(|x| p.contains(x))
            .map(|x| (q.eval(&x).expect("dims"), x))
            .min_by(candidate_order)
    });

    let (value, minimizer) = candidates
        .into_iter()
        .min_by(candidate_order)
        .ok_or_else(|| Error::Internal("nonempty polytope produced no candidate".into()))?;
    let active_set = p.tight_rows(&minimizer);
    Ok(QpResult {
        minimizer,
        value,
        active_set,
    })
}

fn combine(x0: &QVector, dirs: &[QVector], y: &QVector) -> QVector {
    dirs.iter()
        .zip(y.iter())
        .fold(x0.clone(), |acc, (d, yj)| acc.add_scaled(yj, d))
}

/// A cone handed to [`min_quadratic_on_cone_slice`].
#[derive(Debug, Clone, Copy)]
pub enum ConeRef<'a> {
    /// `{x : A x <= 0}`; only the constraint matrix is used.
    Inequalities(&'a HPolyhedron),
    Simple(&'a SimpleCone),
}

/// Minimizer over a simple cone's slice together with its ray multipliers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSliceMin {
    pub result: QpResult,
    pub multipliers: Vec<Rational>,
}

/// `min { x^T H x : x in cone(rays), f^T x = 1 }`, solved in multiplier space.
pub fn min_on_simple_slice(h: &QMatrix, cone: &SimpleCone, f: &QVector) -> Result<SimpleSliceMin> {
    let k = cone.num_rays();
    if k == 0 {
        return Err(Error::Empty);
    }
    let weights: Vec<Rational> = cone.rays().iter().map(|r| f.dot(r)).collect();
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::SliceUnbounded);
    }
    let r = cone.ray_matrix();
    let reduced = QuadraticForm::homogeneous(r.transpose().mul(h)?.mul(&r)?)?;
    let mut poly = HPolyhedron::universe(k);
    for j in 0..k {
        poly.push_row(QVector::unit(k, j).neg(), Rational::zero());
    }
    poly.push_equality(QVector::new(weights), rat(1));
    let res = qp_global_min(&reduced, &poly)?;
    let mu = res.minimizer.into_entries();
    let x = cone.combination(&mu);
    let active_set = (0..k).filter(|&j| mu[j].is_zero()).collect();
    Ok(SimpleSliceMin {
        result: QpResult {
            minimizer: x,
            value: res.value,
            active_set,
        },
        multipliers: mu,
    })
}

/// `min { x^T H x : x in C, f^T x = 1 }` for a cone `C` whose slice by the
/// hyperplane is bounded.
pub fn min_quadratic_on_cone_slice(h: &QMatrix, cone: ConeRef<'_>, f: &QVector) -> Result<QpResult> {
    match cone {
        ConeRef::Simple(c) => Ok(min_on_simple_slice(h, c, f)?.result),
        ConeRef::Inequalities(c) => {
            let n = c.dim();
            let mut slice = HPolyhedron::new(c.a().clone(), QVector::zeros(c.num_constraints()))?;
            slice.push_equality(f.clone(), rat(1));
            let q = QuadraticForm::homogeneous(h.clone())?;
            debug_assert_eq!(q.dim(), n);
            qp_global_min(&q, &slice).map_err(|e| match e {
                Error::Unbounded => Error::SliceUnbounded,
                other => other,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn interval(lo: i64, hi: i64) -> HPolyhedron {
        HPolyhedron::from_i64(&[&[1], &[-1]], &[hi, -lo])
    }

    #[test]
    fn eval_examples() {
        let q = QuadraticForm::new(QMatrix::zeros(2, 2), QVector::zeros(2), rat(5)).unwrap();
        assert_eq!(q.eval(&QVector::from_i64(&[7, -3])).unwrap(), rat(5));
        let q = QuadraticForm::new(QMatrix::from_i64(&[&[1]]), QVector::zeros(1), rat(-1)).unwrap();
        assert_eq!(q.eval(&QVector::from_i64(&[1])).unwrap(), rat(0));
        let q = QuadraticForm::homogeneous(QMatrix::from_i64(&[&[1, -1], &[-1, 1]])).unwrap();
        assert_eq!(q.eval(&QVector::from_i64(&[3, 1])).unwrap(), rat(4));
        assert!(matches!(q.eval(&QVector::zeros(3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_asymmetric() {
        let h = QMatrix::from_i64(&[&[1, 2], &[3, 1]]);
        let err = QuadraticForm::homogeneous(h).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { row: 1, col: 2, .. }));
    }

    #[test]
    fn convex_interior_minimum() {
        // x^2 - x on [0, 1]
        let q = QuadraticForm::new(QMatrix::from_i64(&[&[1]]), QVector::from_i64(&[-1]), rat(0)).unwrap();
        let res = qp_global_min(&q, &interval(0, 1)).unwrap();
        assert_eq!(res.minimizer, QVector::new(vec![frac(1, 2)]));
        assert_eq!(res.value, frac(-1, 4));
        assert!(res.active_set.is_empty());
    }

    #[test]
    fn concave_vertex_minimum() {
        let q = QuadraticForm::homogeneous(QMatrix::from_i64(&[&[-1]])).unwrap();
        let res = qp_global_min(&q, &interval(-1, 2)).unwrap();
        assert_eq!(res.minimizer, QVector::from_i64(&[2]));
        assert_eq!(res.value, rat(-4));
    }

    #[test]
    fn constant_objective() {
        let q = QuadraticForm::new(QMatrix::zeros(2, 2), QVector::zeros(2), frac(7, 3)).unwrap();
        let square = HPolyhedron::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[1, 1, 0, 0]);
        let res = qp_global_min(&q, &square).unwrap();
        assert_eq!(res.value, frac(7, 3));
        // lexicographically smallest of the (all optimal) points
        assert_eq!(res.minimizer, QVector::zeros(2));
    }

    #[test]
    fn degenerate_stationary_line() {
        // (x - y)^2 over the square: zero along the diagonal
        let q = QuadraticForm::homogeneous(QMatrix::from_i64(&[&[1, -1], &[-1, 1]])).unwrap();
        let square = HPolyhedron::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[2, 2, -1, -1]);
        let res = qp_global_min(&q, &square).unwrap();
        assert_eq!(res.value, rat(0));
        assert_eq!(res.minimizer, QVector::from_i64(&[1, 1]));
    }

    #[test]
    fn refuses_unbounded_and_empty() {
        let q = QuadraticForm::homogeneous(QMatrix::from_i64(&[&[1]])).unwrap();
        let ray = HPolyhedron::from_i64(&[&[-1]], &[0]);
        assert_eq!(qp_global_min(&q, &ray), Err(Error::Unbounded));
        let empty = interval(2, 1);
        assert_eq!(qp_global_min(&q, &empty), Err(Error::Empty));
        let q2 = QuadraticForm::homogeneous(QMatrix::identity(2)).unwrap();
        let strip = HPolyhedron::from_i64(&[&[1, 0], &[-1, 0]], &[1, 0]);
        assert_eq!(qp_global_min(&q2, &strip), Err(Error::Unbounded));
    }

    fn orthant2() -> HPolyhedron {
        HPolyhedron::from_i64(&[&[-1, 0], &[0, -1]], &[0, 0])
    }

    #[test]
    fn slice_identity() {
        let f = QVector::from_i64(&[1, 1]);
        let res =
            min_quadratic_on_cone_slice(&QMatrix::identity(2), ConeRef::Inequalities(&orthant2()), &f).unwrap();
        assert_eq!(res.minimizer, QVector::new(vec![frac(1, 2), frac(1, 2)]));
        assert_eq!(res.value, frac(1, 2));
        let cone = SimpleCone::new(2, vec![QVector::unit(2, 0), QVector::unit(2, 1)]).unwrap();
        let res2 = min_quadratic_on_cone_slice(&QMatrix::identity(2), ConeRef::Simple(&cone), &f).unwrap();
        assert_eq!(res2.minimizer, res.minimizer);
        assert_eq!(res2.value, res.value);
    }

    #[test]
    fn slice_indefinite() {
        let f = QVector::from_i64(&[1, 1]);
        let h = QMatrix::from_i64(&[&[1, 0], &[0, -1]]);
        let res = min_quadratic_on_cone_slice(&h, ConeRef::Inequalities(&orthant2()), &f).unwrap();
        assert_eq!(res.minimizer, QVector::from_i64(&[0, 1]));
        assert_eq!(res.value, rat(-1));
    }

    #[test]
    fn slice_zero_form() {
        let f = QVector::from_i64(&[1, 1]);
        let res = min_quadratic_on_cone_slice(&QMatrix::zeros(2, 2), ConeRef::Inequalities(&orthant2()), &f)
            .unwrap();
        assert_eq!(res.value, rat(0));
    }

    #[test]
    fn slice_rejects_bad_hyperplane() {
        let f = QVector::from_i64(&[1, 0]);
        let err = min_quadratic_on_cone_slice(&QMatrix::identity(2), ConeRef::Inequalities(&orthant2()), &f)
            .unwrap_err();
        assert_eq!(err, Error::SliceUnbounded);
        let cone = SimpleCone::new(2, vec![QVector::unit(2, 0), QVector::unit(2, 1)]).unwrap();
        let err = min_quadratic_on_cone_slice(&QMatrix::identity(2), ConeRef::Simple(&cone), &f).unwrap_err();
        assert_eq!(err, Error::SliceUnbounded);
    }

    #[test]
    fn restriction_matches_direct_evaluation() {
        let q = QuadraticForm::new(
            QMatrix::from_i64(&[&[2, 1, 0], &[1, -1, 3], &[0, 3, 1]]),
            QVector::from_i64(&[1, -2, 5]),
            rat(4),
        )
        .unwrap();
        let y = [rat(2), frac(-1, 3)];
        let r = q.fix_leading(&y);
        let z = QVector::new(vec![frac(5, 7)]);
        let x = QVector::new(vec![y[0].clone(), y[1].clone(), z[0].clone()]);
        assert_eq!(r.eval(&z).unwrap(), q.eval(&x).unwrap());
    }
}

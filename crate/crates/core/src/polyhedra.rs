//! H- and V-representations of rational polyhedra.
//!
//! Vertex and extreme-ray enumeration walks subsets of constraint rows in
//! lexicographic order, extending a subset only while its rows stay linearly
//! independent. That is exponential in the worst case and meant for small
//! systems (a dozen rows, a handful of variables).

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{EchelonBasis, LinearSolution, QMatrix, QVector, Rational};
use crate::par;

/// `{x : A x <= b}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HPolyhedron {
    a: QMatrix,
    b: QVector,
}

impl HPolyhedron {
    pub fn new(a: QMatrix, b: QVector) -> Result<Self> {
        if a.rows() != b.dim() {
            return Err(Error::DimensionMismatch {
                expected: a.rows(),
                found: b.dim(),
            });
        }
        if a.cols() == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(HPolyhedron { a, b })
    }

    /// All of `R^n`.
    pub fn universe(n: usize) -> Self {
        HPolyhedron {
            a: QMatrix::zeros(0, n),
            b: QVector::zeros(0),
        }
    }

    pub fn from_i64(a: &[&[i64]], b: &[i64]) -> Self {
        Self::new(QMatrix::from_i64(a), QVector::from_i64(b)).expect("consistent literal")
    }

    /// The box `lower <= x <= upper`.
    pub fn from_box(lower: &QVector, upper: &QVector) -> Self {
        let n = lower.dim();
        let mut p = Self::universe(n);
        for i in 0..n {
            p.push_row(QVector::unit(n, i), upper[i].clone());
            p.push_row(QVector::unit(n, i).neg(), -&lower[i]);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.a.cols()
    }

    pub fn num_constraints(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &QMatrix {
        &self.a
    }

    pub fn b(&self) -> &QVector {
        &self.b
    }

    pub fn push_row(&mut self, row: QVector, rhs: Rational) {
        self.a.push_row(row);
        let mut b = std::mem::take(&mut self.b).into_entries();
        b.push(rhs);
        self.b = QVector::new(b);
    }

    /// Adds the equality `row . x = rhs` as two inequalities.
    pub fn push_equality(&mut self, row: QVector, rhs: Rational) {
        self.push_row(row.neg(), -&rhs);
        self.push_row(row, rhs);
    }

    pub fn intersect(&self, other: &HPolyhedron) -> Result<HPolyhedron> {
        let a = self.a.stack(&other.a)?;
        HPolyhedron::new(a, self.b.concat(&other.b))
    }

    pub fn slack(&self, i: usize, x: &[Rational]) -> Rational {
        &self.b[i] - self.a.row_dot(i, x)
    }

    pub fn violated_rows(&self, x: &QVector) -> Vec<usize> {
        (0..self.num_constraints())
            .filter(|&i| self.slack(i, x).is_negative())
            .collect()
    }

    pub fn contains(&self, x: &QVector) -> bool {
        x.dim() == self.dim() && (0..self.num_constraints()).all(|i| !self.slack(i, x).is_negative())
    }

    pub fn tight_rows(&self, x: &QVector) -> Vec<usize> {
        (0..self.num_constraints())
            .filter(|&i| self.slack(i, x).is_zero())
            .collect()
    }

    /// The polyhedron in the trailing `n - k` coordinates obtained by fixing
    /// the leading `k` coordinates to `y`.
    pub fn fix_leading(&self, y: &[Rational]) -> HPolyhedron {
        let n = self.dim();
        let k = y.len();
        assert!(k < n, "at least one free coordinate must remain");
        let rows = (0..self.num_constraints())
            .map(|i| QVector::new(self.a.row(i)[k..].to_vec()))
            .collect();
        let a = QMatrix::from_rows(n - k, rows).expect("consistent widths");
        let b = (0..self.num_constraints())
            .map(|i| {
                let fixed = self.a.row(i)[..k]
                    .iter()
                    .zip(y)
                    .fold(Rational::zero(), |acc, (a, v)| acc + a * v);
                &self.b[i] - fixed
            })
            .collect();
        HPolyhedron { a, b }
    }

    pub fn is_pointed(&self) -> bool {
        is_pointed(self)
    }
}

/// `conv(vertices) + cone(rays)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VPolyhedron {
    pub vertices: Vec<QVector>,
    pub rays: Vec<QVector>,
}

impl VPolyhedron {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Lexicographically smallest vertex.
    pub fn first_vertex(&self) -> Option<&QVector> {
        self.vertices.first()
    }

    pub fn dump(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for r in &self.rays {
            out.push_str(&format!("ray {r}\n"));
        }
        out
    }
}

/// A cone spanned by linearly independent integral rays.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimpleCone {
    dim: usize,
    rays: Vec<QVector>,
}

impl SimpleCone {
    pub fn new(dim: usize, rays: Vec<QVector>) -> Result<Self> {
        for r in &rays {
            if r.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.dim(),
                });
            }
            if !r.is_integral() || r.is_zero() {
                return Err(Error::Internal(format!(
                    "simple cone ray {r} must be nonzero and integral"
                )));
            }
        }
        let cone = SimpleCone { dim, rays };
        if !cone.is_simple() {
            return Err(Error::Internal("simple cone rays are linearly dependent".into()));
        }
        Ok(cone)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn ray_matrix(&self) -> QMatrix {
        QMatrix::from_columns(self.dim, &self.rays)
    }

    pub fn is_simple(&self) -> bool {
        self.rays.is_empty() || self.ray_matrix().rank() == self.rays.len()
    }

    /// Multipliers `mu >= 0` with `x = sum mu_j r_j`, if `x` lies in the cone.
    pub fn coordinates(&self, x: &QVector) -> Option<Vec<Rational>> {
        if self.rays.is_empty() {
            return x.is_zero().then(Vec::new);
        }
        match crate::exact::solve_linear_system(&self.ray_matrix(), x).ok()? {
            LinearSolution::Unique(mu) => {
                (!mu.iter().any(Signed::is_negative)).then(|| mu.into_entries())
            }
            _ => None,
        }
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.coordinates(x).is_some()
    }

    pub fn combination(&self, mu: &[Rational]) -> QVector {
        assert_eq!(mu.len(), self.rays.len());
        self.rays
            .iter()
            .zip(mu)
            .fold(QVector::zeros(self.dim), |acc, (r, m)| acc.add_scaled(m, r))
    }

    /// Subcone spanned by the rays at `indices`.
    pub fn subcone(&self, indices: &[usize]) -> SimpleCone {
        SimpleCone {
            dim: self.dim,
            rays: indices.iter().map(|&i| self.rays[i].clone()).collect(),
        }
    }
}

/// `{x : A x <= 0}` for `P = {x : A x <= b}`.
pub fn recession_cone(p: &HPolyhedron) -> HPolyhedron {
    HPolyhedron {
        a: p.a.clone(),
        b: QVector::zeros(p.num_constraints()),
    }
}

/// Lineality space `{x : A x = 0}` is trivial exactly when `rank(A) = n`.
pub fn is_pointed(p: &HPolyhedron) -> bool {
    p.a.rank() == p.dim()
}

/// A part of an orthant split: `P` with `x_i >= 0` for bits set in `signs`
/// and `x_i <= 0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthantPart {
    pub signs: u64,
    pub poly: HPolyhedron,
}

/// The `2^n` sign-restricted parts of `P`, nonnegative orthant first.
pub fn orthant_split(p: &HPolyhedron) -> Vec<OrthantPart> {
    let n = p.dim();
    assert!(n < 64, "orthant split needs fewer than 64 coordinates");
    let full: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    (0..=full)
        .rev()
        .map(|signs| {
            let mut poly = p.clone();
            for i in 0..n {
                let e = QVector::unit(n, i);
                if signs >> i & 1 == 1 {
                    poly.push_row(e.neg(), Rational::zero());
                } else {
                    poly.push_row(e, Rational::zero());
                }
            }
            OrthantPart { signs, poly }
        })
        .collect()
}

/// Visits every independent row subset of size `depth` (in lexicographic
/// order of row indices) and collects what `leaf` returns.
fn collect_independent<R, F>(a: &QMatrix, b: &QVector, depth: usize, leaf: &F) -> Vec<R>
where
    R: Send,
    F: Fn(&EchelonBasis, &[usize]) -> Option<R> + Sync + Send,
{
    fn walk<R, F>(
        a: &QMatrix,
        b: &QVector,
        depth: usize,
        start: usize,
        basis: &EchelonBasis,
        chosen: &mut Vec<usize>,
        leaf: &F,
        out: &mut Vec<R>,
    ) where
        F: Fn(&EchelonBasis, &[usize]) -> Option<R>,
    {
        if basis.len() == depth {
            out.extend(leaf(basis, chosen));
            return;
        }
        let remaining = depth - basis.len();
        for i in start..a.rows() {
            if a.rows() - i < remaining {
                break;
            }
            let mut next = basis.clone();
            if !next.push(a.row(i), &b[i]) {
                continue;
            }
            chosen.push(i);
            walk(a, b, depth, i + 1, &next, chosen, leaf, out);
            chosen.pop();
        }
    }

    if depth == 0 {
        return leaf(&EchelonBasis::default(), &[]).into_iter().collect();
    }
    par::flat_map_range(a.rows(), |first| {
        let mut basis = EchelonBasis::default();
        let mut out = Vec::new();
        if basis.push(a.row(first), &b[first]) {
            let mut chosen = vec![first];
            walk(a, b, depth, first + 1, &basis, &mut chosen, leaf, &mut out);
        }
        out
    })
}

/// Visits every independent row subset of size `0..=max_depth`.
pub(crate) fn collect_independent_upto<R, F>(
    a: &QMatrix,
    b: &QVector,
    max_depth: usize,
    visit: &F,
) -> Vec<R>
where
    R: Send,
    F: Fn(&EchelonBasis, &[usize]) -> Option<R> + Sync + Send,
{
    fn walk<R, F>(
        a: &QMatrix,
        b: &QVector,
        max_depth: usize,
        start: usize,
        basis: &EchelonBasis,
        chosen: &mut Vec<usize>,
        visit: &F,
        out: &mut Vec<R>,
    ) where
        F: Fn(&EchelonBasis, &[usize]) -> Option<R>,
    {
        out.extend(visit(basis, chosen));
        if basis.len() == max_depth {
            return;
        }
        for i in start..a.rows() {
            let mut next = basis.clone();
            if !next.push(a.row(i), &b[i]) {
                continue;
            }
            chosen.push(i);
            walk(a, b, max_depth, i + 1, &next, chosen, visit, out);
            chosen.pop();
        }
    }

    let mut out: Vec<R> = visit(&EchelonBasis::default(), &[]).into_iter().collect();
    if max_depth == 0 {
        return out;
    }
    out.extend(par::flat_map_range(a.rows(), |first| {
        let mut basis = EchelonBasis::default();
        let mut out = Vec::new();
        if basis.push(a.row(first), &b[first]) {
            let mut chosen = vec![first];
            walk(a, b, max_depth, first + 1, &basis, &mut chosen, visit, &mut out);
        }
        out
    }));
    out
}

fn sorted_unique(items: Vec<QVector>) -> Vec<QVector> {
    items.into_iter().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Vertices of a pointed polyhedron (empty when `P` is empty).
pub fn vertices(p: &HPolyhedron) -> Result<Vec<QVector>> {
    let n = p.dim();
    let rank = p.a.rank();
    if rank < n {
        return Err(Error::NotPointed { rank, dim: n });
    }
    let found = collect_independent(&p.a, &p.b, n, &|basis, _| {
        let x = basis.solution(n);
        p.contains(&x).then_some(x)
    });
    Ok(sorted_unique(found))
}

/// Primitive integral extreme rays of the pointed cone `{x : A x <= 0}`.
pub fn extreme_rays(a: &QMatrix) -> Result<Vec<QVector>> {
    let n = a.cols();
    let rank = a.rank();
    if rank < n {
        return Err(Error::NotPointed { rank, dim: n });
    }
    let zero = QVector::zeros(a.rows());
    let in_cone = |d: &QVector| (0..a.rows()).all(|i| !a.row_dot(i, d).is_positive());
    let found = collect_independent(a, &zero, n - 1, &|basis, _| {
        let d = basis.kernel_vector(n);
        if in_cone(&d) {
            Some(d.primitive())
        } else {
            let d = d.neg();
            in_cone(&d).then(|| d.primitive())
        }
    });
    Ok(sorted_unique(found))
}

/// Exact vertex and extreme-ray enumeration of a pointed polyhedron.
///
/// Rays are primitive integral vectors; both lists are sorted
/// lexicographically. An empty polyhedron yields empty lists.
pub fn h_to_v(p: &HPolyhedron) -> Result<VPolyhedron> {
    let vertices = vertices(p)?;
    if vertices.is_empty() {
        return Ok(VPolyhedron::default());
    }
    let rays = extreme_rays(&p.a)?;
    let v = VPolyhedron { vertices, rays };
    debug_assert!(v.vertices.iter().all(|x| p.contains(x)));
    debug_assert!(v
        .rays
        .iter()
        .all(|r| (0..p.num_constraints()).all(|i| !p.a.row_dot(i, r).is_positive())));
    Ok(v)
}

/// Emptiness test for any polyhedron (pointed or not).
pub fn is_empty(p: &HPolyhedron) -> bool {
    if is_pointed(p) {
        return vertices(p).map(|v| v.is_empty()).unwrap_or(true);
    }
    orthant_split(p)
        .iter()
        .all(|part| vertices(&part.poly).map(|v| v.is_empty()).unwrap_or(true))
}

/// Finds linearly independent rays `K` and `mu >= 0` with
/// `r = sum_{j in K} mu_j rays[j]`.
///
/// Subsets are tried by increasing size, then lexicographically, so the
/// answer is deterministic and uses as few rays as possible.
pub fn caratheodory_simple_cone(rays: &[QVector], r: &QVector) -> Result<(Vec<usize>, Vec<Rational>)> {
    let n = r.dim();
    if let Some(bad) = rays.iter().find(|v| v.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: bad.dim(),
        });
    }
    if r.is_zero() {
        return Ok((Vec::new(), Vec::new()));
    }
    let max = rays.len().min(n);
    for size in 1..=max {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let cols: Vec<QVector> = subset.iter().map(|&j| rays[j].clone()).collect();
            let m = QMatrix::from_columns(n, &cols);
            if m.rank() == size {
                if let LinearSolution::Unique(mu) = crate::exact::solve_linear_system(&m, r)? {
                    if !mu.iter().any(Signed::is_negative) {
                        let check = subset
                            .iter()
                            .zip(mu.iter())
                            .fold(QVector::zeros(n), |acc, (&j, m)| acc.add_scaled(m, &rays[j]));
                        assert_eq!(&check, r, "Caratheodory substitution check");
                        return Ok((subset, mu.into_entries()));
                    }
                }
            }
            if !next_combination(&mut subset, rays.len()) {
                break;
            }
        }
    }
    Err(Error::NotInCone)
}

/// Advances `c` to the next `k`-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for i in (0..k).rev() {
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// All `2^k` faces of a simple cone, as ray subsets ordered by bitmask.
pub fn faces_of_simple_cone(c: &SimpleCone) -> Vec<SimpleCone> {
    let k = c.num_rays();
    (0u64..1 << k)
        .map(|mask| {
            let idx: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).collect();
            c.subcone(&idx)
        })
        .collect()
}

/// Exact bounds of a linear functional over a polytope, from its vertices.
pub fn linear_range(vertices: &[QVector], w: &QVector) -> Option<(Rational, Rational)> {
    let mut values = vertices.iter().map(|v| v.dot(w));
    let first = values.next()?;
    Some(values.fold((first.clone(), first), |(lo, hi), x| {
        (if x < lo { x.clone() } else { lo }, if x > hi { x } else { hi })
    }))
}

/// Exact bounding box of the vertex set.
pub fn bounding_box(vertices: &[QVector]) -> Option<(QVector, QVector)> {
    let n = vertices.first()?.dim();
    let mut lo = vertices[0].clone();
    let mut hi = vertices[0].clone();
    for v in &vertices[1..] {
        for i in 0..n {
            if v[i] < lo[i] {
                lo.set(i, v[i].clone());
            }
            if v[i] > hi[i] {
                hi.set(i, v[i].clone());
            }
        }
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{frac, rat};

    fn unit_square() -> HPolyhedron {
        HPolyhedron::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[1, 1, 0, 0])
    }

    // x1 >= 1, 0 <= x2 <= x1
    fn wedge() -> HPolyhedron {
        HPolyhedron::from_i64(&[&[-1, 0], &[0, -1], &[-1, 1]], &[-1, 0, 0])
    }

    #[test]
    fn recession_zeroes_rhs() {
        let p = HPolyhedron::from_i64(&[&[1]], &[5]);
        assert_eq!(recession_cone(&p), HPolyhedron::from_i64(&[&[1]], &[0]));
        let rec = recession_cone(&unit_square());
        assert_eq!(rec.b(), &QVector::zeros(4));
        assert_eq!(h_to_v(&rec).unwrap().vertices, vec![QVector::zeros(2)]);
        assert!(h_to_v(&rec).unwrap().rays.is_empty());
        let rec = recession_cone(&wedge());
        assert_eq!(rec.a(), wedge().a());
        assert_eq!(rec.b(), &QVector::zeros(3));
    }

    #[test]
    fn pointedness() {
        let orthant = HPolyhedron::from_i64(&[&[-1, 0], &[0, -1]], &[0, 0]);
        assert!(is_pointed(&orthant));
        let half = HPolyhedron::from_i64(&[&[1, 0]], &[0]);
        assert!(!is_pointed(&half));
        // rank 2, so the lineality space {x : Ax = 0} is {0}
        let wedge = HPolyhedron::from_i64(&[&[1, 1], &[1, -1]], &[0, 0]);
        assert!(is_pointed(&wedge));
        assert!(!h_to_v(&wedge).unwrap().rays.is_empty());
    }

    #[test]
    fn orthant_split_counts() {
        let line = HPolyhedron::universe(1);
        let parts = orthant_split(&line);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].poly, HPolyhedron::from_i64(&[&[-1]], &[0]));
        assert_eq!(parts[1].poly, HPolyhedron::from_i64(&[&[1]], &[0]));
        let parts = orthant_split(&HPolyhedron::universe(2));
        assert_eq!(parts.len(), 4);
        assert!(parts.iter().all(|p| p.poly.is_pointed()));
    }

    #[test]
    fn orthant_rows_are_small() {
        use crate::exact::Encoded;
        // each added row is a signed unit vector with zero rhs: O(n) bits
        let n = 5;
        let p = HPolyhedron::universe(n);
        for part in orthant_split(&p) {
            let added = part.poly.a().encoding_size().bits();
            assert!(added <= (n as u64) * (n as u64 * 5 + 8));
        }
    }

    #[test]
    fn h_to_v_square() {
        let v = h_to_v(&unit_square()).unwrap();
        assert_eq!(v.vertices.len(), 4);
        assert!(v.rays.is_empty());
    }

    #[test]
    fn h_to_v_wedge() {
        let v = h_to_v(&wedge()).unwrap();
        assert_eq!(v.vertices, vec![QVector::from_i64(&[1, 0]), QVector::from_i64(&[1, 1])]);
        assert_eq!(v.rays, vec![QVector::from_i64(&[1, 0]), QVector::from_i64(&[1, 1])]);
    }

    #[test]
    fn h_to_v_half_line() {
        let p = HPolyhedron::new(QMatrix::from_i64(&[&[-1]]), QVector::new(vec![frac(-2, 3)])).unwrap();
        let v = h_to_v(&p).unwrap();
        assert_eq!(v.vertices, vec![QVector::new(vec![frac(2, 3)])]);
        assert_eq!(v.rays, vec![QVector::from_i64(&[1])]);
    }

    #[test]
    fn h_to_v_errors_and_empty() {
        let half = HPolyhedron::from_i64(&[&[1, 0]], &[0]);
        assert!(matches!(h_to_v(&half), Err(Error::NotPointed { .. })));
        let empty = HPolyhedron::from_i64(&[&[1], &[-1]], &[0, -1]);
        assert_eq!(h_to_v(&empty).unwrap(), VPolyhedron::default());
        assert!(is_empty(&empty));
        assert!(!is_empty(&half));
        let empty_strip = HPolyhedron::from_i64(&[&[1, 0], &[-1, 0]], &[0, -1]);
        assert!(is_empty(&empty_strip));
    }

    #[test]
    fn caratheodory_examples() {
        let e1 = QVector::from_i64(&[1, 0]);
        let e2 = QVector::from_i64(&[0, 1]);
        let d = QVector::from_i64(&[1, 1]);
        let (k, mu) = caratheodory_simple_cone(&[e1.clone(), e2.clone()], &QVector::from_i64(&[2, 3])).unwrap();
        assert_eq!(k, vec![0, 1]);
        assert_eq!(mu, vec![rat(2), rat(3)]);
        let (k, mu) = caratheodory_simple_cone(&[e1.clone(), e2.clone(), d.clone()], &d).unwrap();
        assert_eq!(k, vec![2]);
        assert_eq!(mu, vec![rat(1)]);
        assert_eq!(caratheodory_simple_cone(&[e1], &e2), Err(Error::NotInCone));
    }

    #[test]
    fn face_counts() {
        let rays = |k: usize| -> SimpleCone {
            SimpleCone::new(3, (0..k).map(|i| QVector::unit(3, i)).collect()).unwrap()
        };
        assert_eq!(faces_of_simple_cone(&rays(1)).len(), 2);
        let faces = faces_of_simple_cone(&rays(2));
        assert_eq!(faces.len(), 4);
        assert_eq!(faces[0].num_rays(), 0);
        assert_eq!(faces[3], rays(2));
        assert_eq!(faces_of_simple_cone(&rays(3)).len(), 8);
    }

    #[test]
    fn simple_cone_rejects_dependent_rays() {
        let r = QVector::from_i64(&[1, 1]);
        assert!(SimpleCone::new(2, vec![r.clone(), r.scale(&rat(2))]).is_err());
        assert!(SimpleCone::new(2, vec![QVector::new(vec![frac(1, 2), rat(0)])]).is_err());
    }

    #[test]
    fn fix_leading_coordinates() {
        // y = z, 1/2 <= z <= 7/5 with y fixed to 1
        let p = HPolyhedron::new(
            QMatrix::from_i64(&[&[1, -1], &[-1, 1], &[0, 1], &[0, -1]]),
            QVector::new(vec![rat(0), rat(0), frac(7, 5), frac(-1, 2)]),
        )
        .unwrap();
        let fiber = p.fix_leading(&[rat(1)]);
        assert_eq!(fiber.dim(), 1);
        assert_eq!(h_to_v(&fiber).unwrap().vertices, vec![QVector::from_i64(&[1])]);
    }

    #[test]
    fn combinations_enumerate_lexicographically() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
    }
}

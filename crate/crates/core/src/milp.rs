//! Mixed-integer linear sets `P ∩ (Z^p x R^q)`: decomposition into fiber
//! polytopes plus integer cones, and small feasible points.
//!
//! For a pointed `P = conv(V) + cone(R)` and a set `K` of linearly
//! independent rays, every mixed-integer point of `P` can be written as a
//! mixed-integer point of `conv(V) + sum_{j in K} [0,1] r_j` plus a
//! nonnegative integer combination of `R_K`. The fibers below fix the integer
//! part `y` and cut `P` with the exact bounding box of that zonotope-plus-hull,
//! which contains the zonotope fiber and stays inside `P`.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{ceil, floor, from_int, Integer, QMatrix, QVector, Rational};
use crate::par;
use crate::polyhedra::{h_to_v, next_combination, vertices, HPolyhedron, SimpleCone, VPolyhedron};
use crate::qp::{qp_global_min, QpResult, QuadraticForm};

/// Default cap on the number of integer projections scanned per family.
pub const DEFAULT_FIBER_LIMIT: u64 = 200_000;

/// `P ∩ (Z^p x R^(n-p))`: the leading `p` coordinates are integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedIntegerSet {
    pub poly: HPolyhedron,
    pub p: usize,
}

impl MixedIntegerSet {
    pub fn new(poly: HPolyhedron, p: usize) -> Result<Self> {
        if p > poly.dim() {
            return Err(Error::BadIntegerCount { p, n: poly.dim() });
        }
        Ok(MixedIntegerSet { poly, p })
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn q(&self) -> usize {
        self.dim() - self.p
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.poly.contains(x) && x.iter().take(self.p).all(|v| v.is_integer())
    }
}

/// One fiber polytope: `P ∩ {x_{1..p} = y} ∩ box`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    /// Indices of the ray families whose boxes produce this fiber.
    pub families: Vec<usize>,
    pub integer_part: Vec<Integer>,
    /// Box on the continuous coordinates.
    pub lower: QVector,
    pub upper: QVector,
    /// The fiber in the continuous coordinates; `None` when `q = 0`.
    pub continuous: Option<HPolyhedron>,
    /// Vertices in `R^n`, sorted.
    pub vertices: Vec<QVector>,
}

impl Fiber {
    pub fn p(&self) -> usize {
        self.integer_part.len()
    }

    pub fn dim(&self) -> usize {
        self.p() + self.lower.dim()
    }

    /// `(y, z)` for continuous coordinates `z`.
    pub fn lift(&self, z: &QVector) -> QVector {
        QVector::from_integers(&self.integer_part).concat(z)
    }

    /// The fiber as an H-polyhedron in `R^n`.
    pub fn to_h_polyhedron(&self, parent: &HPolyhedron) -> HPolyhedron {
        let n = self.dim();
        let mut poly = parent.clone();
        for (i, y) in self.integer_part.iter().enumerate() {
            poly.push_equality(QVector::unit(n, i), from_int(y.clone()));
        }
        for j in 0..self.lower.dim() {
            let e = QVector::unit(n, self.p() + j);
            poly.push_row(e.neg(), -&self.lower[j]);
            poly.push_row(e, self.upper[j].clone());
        }
        poly
    }

    pub fn contains(&self, x: &QVector) -> bool {
        let p = self.p();
        x.dim() == self.dim()
            && x.iter().zip(&self.integer_part).all(|(a, y)| *a == from_int(y.clone()))
            && match &self.continuous {
                Some(c) => c.contains(&x.tail(p)),
                None => true,
            }
    }

    /// Global minimum of `q` over `fiber + shift`.
    pub fn min_quadratic(&self, q: &QuadraticForm, shift: &QVector) -> Result<QpResult> {
        let base = self.lift(&QVector::zeros(self.lower.dim())).add(shift);
        match &self.continuous {
            None => Ok(QpResult {
                value: q.eval(&base)?,
                minimizer: base,
                active_set: Vec::new(),
            }),
            Some(cont) => {
                let reduced = q.fix_leading_shifted(self.p(), &base);
                let res = qp_global_min(&reduced, cont)?;
                let x = base.add(&QVector::zeros(self.p()).concat(&res.minimizer));
                Ok(QpResult {
                    minimizer: x,
                    value: res.value,
                    active_set: res.active_set,
                })
            }
        }
    }
}

/// Fibers and integral simple ray families covering a mixed-integer set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MisDecomposition {
    pub vertices: Vec<QVector>,
    pub rays: Vec<QVector>,
    /// Ray index sets `K`; ordered by decreasing size, then lexicographically.
    pub families: Vec<Vec<usize>>,
    pub ray_families: Vec<SimpleCone>,
    pub fibers: Vec<Fiber>,
}

impl MisDecomposition {
    /// Families of maximal size. Any independent ray set extends to one of
    /// these, so pairing fibers with them alone already covers the set.
    pub fn is_maximal(&self, family: usize) -> bool {
        self.families[family].len() == self.families.first().map_or(0, Vec::len)
    }
}

impl MisDecomposition {
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let v = VPolyhedron {
            vertices: self.vertices.clone(),
            rays: self.rays.clone(),
        };
        out.push_str(&v.dump());
        for (k, fam) in self.ray_families.iter().enumerate() {
            let rays: Vec<String> = fam.rays().iter().map(|r| r.to_string()).collect();
            out.push_str(&format!("family {k} {{{}}}\n", rays.join(", ")));
        }
        for (i, fib) in self.fibers.iter().enumerate() {
            let y: Vec<String> = fib.integer_part.iter().map(|v| v.to_string()).collect();
            let verts: Vec<String> = fib.vertices.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!(
                "fiber {i} families={:?} y=({}) box={}..{} vertices=[{}]\n",
                fib.families,
                y.join(", "),
                fib.lower,
                fib.upper,
                verts.join(", ")
            ));
        }
        out
    }
}

/// Nonempty linearly independent ray subsets, largest first.
fn independent_families(rays: &[QVector], n: usize) -> Vec<Vec<usize>> {
    if rays.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for size in (1..=rays.len().min(n)).rev() {
        let mut subset: Vec<usize> = (0..size).collect();
        loop {
            let cols: Vec<QVector> = subset.iter().map(|&j| rays[j].clone()).collect();
            if QMatrix::from_columns(n, &cols).rank() == size {
                out.push(subset.clone());
            }
            if !next_combination(&mut subset, rays.len()) {
                break;
            }
        }
    }
    out
}

/// Exact bounding box of `conv(V) + sum_{j in K} [0,1] r_j`.
fn family_box(vertices: &[QVector], rays: &[QVector], family: &[usize]) -> (QVector, QVector) {
    let (mut lo, mut hi) = crate::polyhedra::bounding_box(vertices).expect("nonempty vertex set");
    for &j in family {
        for i in 0..lo.dim() {
            let r = &rays[j][i];
            if r.is_negative() {
                lo.set(i, &lo[i] + r);
            } else {
                hi.set(i, &hi[i] + r);
            }
        }
    }
    (lo, hi)
}

/// Integer points of `prod_i [lo_i, hi_i]` in lexicographic order.
fn integer_points(lo: &[Rational], hi: &[Rational], limit: u64) -> Result<Vec<Vec<Integer>>> {
    let ranges: Vec<(Integer, Integer)> = lo.iter().zip(hi).map(|(l, h)| (ceil(l), floor(h))).collect();
    let mut count: u64 = 1;
    for (l, h) in &ranges {
        if h < l {
            return Ok(Vec::new());
        }
        let width: Integer = h - l + 1u32;
        let width = u64::try_from(width).unwrap_or(u64::MAX);
        count = count.saturating_mul(width);
        if count > limit {
            return Err(Error::TooLarge {
                what: "integer projections",
                limit,
            });
        }
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur: Vec<Integer> = ranges.iter().map(|(l, _)| l.clone()).collect();
    loop {
        out.push(cur.clone());
        let mut i = cur.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < ranges[i].1 {
                cur[i] += 1u32;
                for j in i + 1..cur.len() {
                    cur[j] = ranges[j].0.clone();
                }
                break;
            }
        }
    }
}

fn build_fiber(
    set: &MixedIntegerSet,
    families: Vec<usize>,
    y: Vec<Integer>,
    lo: &QVector,
    hi: &QVector,
) -> Result<Option<Fiber>> {
    let p = set.p;
    let n = set.dim();
    let lower = lo.tail(p);
    let upper = hi.tail(p);
    let y_rat: Vec<Rational> = y.iter().cloned().map(from_int).collect();
    if p == n {
        let x = QVector::new(y_rat);
        if !set.poly.contains(&x) {
            return Ok(None);
        }
        return Ok(Some(Fiber {
            families,
            integer_part: y,
            lower,
            upper,
            continuous: None,
            vertices: vec![x],
        }));
    }
    let boxed = set.poly.fix_leading(&y_rat).intersect(&HPolyhedron::from_box(&lower, &upper))?;
    let zs = vertices(&boxed)?;
    if zs.is_empty() {
        return Ok(None);
    }
    let prefix = QVector::new(y_rat);
    let verts = zs.iter().map(|z| prefix.concat(z)).collect();
    Ok(Some(Fiber {
        families,
        integer_part: y,
        lower,
        upper,
        continuous: Some(boxed),
        vertices: verts,
    }))
}

/// Decomposes `P ∩ (Z^p x R^q)` into fibers `P_i` and integral simple ray
/// families `R_K` with `P ∩ (Z^p x R^q) = ⋃_{i,K} (P_i + intcone(R_K))`.
///
/// Empty fibers are dropped. A fiber produced by several families (same
/// integer part and box) is kept once and lists all of them.
pub fn decompose_mixed_integer_set(set: &MixedIntegerSet) -> Result<MisDecomposition> {
    decompose_with_limit(set, DEFAULT_FIBER_LIMIT)
}

pub fn decompose_with_limit(set: &MixedIntegerSet, limit: u64) -> Result<MisDecomposition> {
    let n = set.dim();
    let v = h_to_v(&set.poly)?;
    if v.is_empty() {
        return Ok(MisDecomposition::default());
    }
    let families = independent_families(&v.rays, n);
    let ray_families = families
        .iter()
        .map(|k| SimpleCone::new(n, k.iter().map(|&j| v.rays[j].clone()).collect()))
        .collect::<Result<Vec<_>>>()?;

    let mut jobs: Vec<(Vec<usize>, Vec<Integer>, QVector, QVector)> = Vec::new();
    let mut seen: BTreeMap<_, usize> = BTreeMap::new();
    for (k, fam) in families.iter().enumerate() {
        let (lo, hi) = family_box(&v.vertices, &v.rays, fam);
        for y in integer_points(&lo[..set.p], &hi[..set.p], limit)? {
            let key = (y.clone(), lo.tail(set.p), hi.tail(set.p));
            match seen.get(&key) {
                Some(&idx) => jobs[idx].0.push(k),
                None => {
                    seen.insert(key, jobs.len());
                    jobs.push((vec![k], y, lo.clone(), hi.clone()));
                }
            }
        }
    }
    let built = par::map(&jobs, |(ks, y, lo, hi)| build_fiber(set, ks.clone(), y.clone(), lo, hi));
    let mut fibers = Vec::new();
    for f in built {
        fibers.extend(f?);
    }
    Ok(MisDecomposition {
        vertices: v.vertices,
        rays: v.rays,
        families,
        ray_families,
        fibers,
    })
}

/// A mixed-integer point of the set, or `None` if there is none.
///
/// Scans the fibers of the maximal ray families in order and returns the
/// lexicographically smallest vertex of the first nonempty one.
pub fn mip_point(set: &MixedIntegerSet) -> Result<Option<QVector>> {
    mip_point_with_limit(set, DEFAULT_FIBER_LIMIT)
}

pub fn mip_point_with_limit(set: &MixedIntegerSet, limit: u64) -> Result<Option<QVector>> {
    let n = set.dim();
    let v = h_to_v(&set.poly)?;
    if v.is_empty() {
        return Ok(None);
    }
    let families = independent_families(&v.rays, n);
    let top = families.first().map_or(0, Vec::len);
    for fam in families.iter().take_while(|k| k.len() == top) {
        let (lo, hi) = family_box(&v.vertices, &v.rays, fam);
        let ys = integer_points(&lo[..set.p], &hi[..set.p], limit)?;
        let hit = par::find_map_first(&ys, |y| match build_fiber(set, Vec::new(), y.clone(), &lo, &hi) {
            Ok(Some(f)) => Some(Ok(f.vertices[0].clone())),
            Ok(None) => None,
            Err(e) => Some(Err(e)),
        });
        if let Some(x) = hit.transpose()? {
            debug_assert!(set.contains(&x));
            return Ok(Some(x));
        }
    }
    Ok(None)
}

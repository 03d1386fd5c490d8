//! Feasibility certificates for `Q(x) <= 0, A x <= b, x in Z^p x R^q`.
//!
//! The search follows a constructive case analysis. Each pointed part of the
//! feasible region is classified by the sign of `min { r^T H r : r in rec(P),
//! f^T r = 1 }`. A negative minimum means a ray along which `Q` eventually
//! drops below zero (case 1). Otherwise the mixed-integer set is decomposed
//! into fibers plus integer cones, each cone is refined so that `Q` behaves
//! well on its faces, and every piece is either solved along a direction of
//! linear descent or reduced to a bounded enumeration (case 2).

use std::fmt;

use num_traits::{Signed, Zero};

use crate::cone::{normalizing_hyperplane, simple_cone_decomposition};
use crate::error::{Error, Result};
use crate::exact::{ceil, ceil_sqrt_quotient, from_int, EncodingSize, Encoded, Integer, QVector, Rational};
use crate::milp::{decompose_mixed_integer_set, mip_point, Fiber, MixedIntegerSet};
use crate::par;
use crate::polyhedra::{h_to_v, is_pointed, orthant_split, recession_cone, HPolyhedron, SimpleCone};
use crate::qp::{min_on_simple_slice, min_quadratic_on_cone_slice, ConeRef, QuadraticForm};

/// Cap on integer multiplier vectors enumerated by one bounded search.
const ENUMERATION_LIMIT: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiqpInstance {
    pub q: QuadraticForm,
    pub poly: HPolyhedron,
    /// Number of leading integer variables.
    pub p: usize,
    /// Encoding size of `(H, c, d, A, b)`.
    pub phi: EncodingSize,
}

impl MiqpInstance {
    pub fn new(q: QuadraticForm, poly: HPolyhedron, p: usize) -> Result<Self> {
        if q.dim() != poly.dim() {
            return Err(Error::DimensionMismatch {
                expected: poly.dim(),
                found: q.dim(),
            });
        }
        if p > poly.dim() {
            return Err(Error::BadIntegerCount { p, n: poly.dim() });
        }
        let phi = q.h().encoding_size()
            + q.c().encoding_size()
            + q.d().encoding_size()
            + poly.a().encoding_size()
            + poly.b().encoding_size();
        Ok(MiqpInstance { q, poly, p, phi })
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn mixed_integer_set(&self) -> MixedIntegerSet {
        MixedIntegerSet {
            poly: self.poly.clone(),
            p: self.p,
        }
    }
}

/// The branch of the case analysis that produced a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Branch {
    /// `x~ + lambda r~` along a ray with `r^T H r < 0`.
    Case1 { lambda: Integer },
    /// Linear descent along `direction` of a refined piece.
    Linear {
        fiber: usize,
        family: usize,
        piece: usize,
        offset: usize,
        direction: usize,
        mu: Integer,
    },
    /// Final QP on the fiber shifted by an integer combination `eta` of the
    /// piece rays with positive curvature. `bound` caps `||x||_inf` over the
    /// enumerated region.
    Bounded {
        fiber: usize,
        family: usize,
        piece: usize,
        offset: usize,
        eta: Vec<Integer>,
        bound: Integer,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    /// Sign mask of the orthant part (bit `i` set: `x_i >= 0`), or `None`
    /// when the region was pointed and searched whole.
    pub orthant: Option<u64>,
    pub branch: Branch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub x: QVector,
    pub size: EncodingSize,
    pub trace: Trace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    /// `A x <= b` and `Q(x) <= 0`.
    pub feasible: bool,
    pub integral: bool,
    pub q_value: Rational,
    pub size: EncodingSize,
    pub violated_rows: Vec<usize>,
    pub fractional_coordinates: Vec<usize>,
}

impl VerificationReport {
    pub fn accepted(&self) -> bool {
        self.feasible && self.integral
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q_value {}", crate::exact::format_rational(&self.q_value))?;
        writeln!(f, "size {}", self.size)?;
        if !self.violated_rows.is_empty() {
            let rows: Vec<String> = self.violated_rows.iter().map(|r| (r + 1).to_string()).collect();
            writeln!(f, "violated constraint rows {}", rows.join(","))?;
        }
        if self.q_value.is_positive() {
            writeln!(f, "violated quadratic constraint Q(x) <= 0")?;
        }
        if !self.integral {
            let cs: Vec<String> = self.fractional_coordinates.iter().map(|r| (r + 1).to_string()).collect();
            writeln!(f, "violated integrality at coordinates {}", cs.join(","))?;
        }
        write!(f, "{}", if self.accepted() { "VALID" } else { "INVALID" })
    }
}

/// Exact check of a claimed certificate.
pub fn verify_certificate(inst: &MiqpInstance, x: &QVector) -> Result<VerificationReport> {
    if x.dim() != inst.dim() {
        return Err(Error::DimensionMismatch {
            expected: inst.dim(),
            found: x.dim(),
        });
    }
    let q_value = inst.q.eval(x)?;
    let violated_rows = inst.poly.violated_rows(x);
    let fractional_coordinates: Vec<usize> = (0..inst.p).filter(|&i| !x[i].is_integer()).collect();
    Ok(VerificationReport {
        feasible: violated_rows.is_empty() && !q_value.is_positive(),
        integral: fractional_coordinates.is_empty(),
        q_value,
        size: x.encoding_size(),
        violated_rows,
        fractional_coordinates,
    })
}

/// Searches for a certificate; `None` means the instance is infeasible.
///
/// Parts of the region are tried in order (the whole region if it is
/// pointed, otherwise its orthant parts starting from the nonnegative one)
/// and the first certificate found is returned, so the result does not
/// depend on scheduling.
pub fn find_certificate(inst: &MiqpInstance) -> Result<Option<Certificate>> {
    let parts: Vec<(Option<u64>, HPolyhedron)> = if is_pointed(&inst.poly) {
        vec![(None, inst.poly.clone())]
    } else {
        orthant_split(&inst.poly)
            .into_iter()
            .map(|part| (Some(part.signs), part.poly))
            .collect()
    };
    let found = par::find_map_first(&parts, |(signs, part)| {
        case_dispatch(inst, part).transpose().map(|r| r.map(|(x, branch)| (x, *signs, branch)))
    });
    let Some((x, orthant, branch)) = found.transpose()? else {
        return Ok(None);
    };
    let report = verify_certificate(inst, &x)?;
    if !report.accepted() {
        return Err(Error::Internal(format!("constructed point {x} fails verification")));
    }
    Ok(Some(Certificate {
        size: report.size,
        x,
        trace: Trace { orthant, branch },
    }))
}

/// Case split on a pointed part of the region.
pub fn case_dispatch(inst: &MiqpInstance, part: &HPolyhedron) -> Result<Option<(QVector, Branch)>> {
    let v = h_to_v(part)?;
    if v.is_empty() {
        return Ok(None);
    }
    if v.rays.is_empty() {
        return case2_decompose(inst, part);
    }
    let f = normalizing_hyperplane(inst.dim(), &v.rays)?.f;
    let rec = recession_cone(part);
    let min = min_quadratic_on_cone_slice(inst.q.h(), ConeRef::Inequalities(&rec), &f)?;
    if min.value.is_negative() {
        case1_ray(inst, part, &min.minimizer)
    } else {
        case2_decompose(inst, part)
    }
}

/// Smallest `lambda >= 0` with `v1 l^2 + v2 l + v3 <= 0`, given `v1 < 0`.
pub fn case1_lambda(v1: &Rational, v2: &Rational, v3: &Rational) -> Integer {
    assert!(v1.is_negative(), "case 1 needs negative curvature");
    if !v3.is_positive() {
        return Integer::zero();
    }
    let disc = v2 * v2 - Rational::from_integer(4.into()) * v1 * v3;
    let lambda = ceil_sqrt_quotient(v2, &disc, &(Rational::from_integer(2.into()) * v1.abs()));
    lambda.max(Integer::zero())
}

/// Case 1: walk from a mixed-integer point along an integral ray with
/// negative curvature until `Q` is nonpositive.
pub fn case1_ray(inst: &MiqpInstance, part: &HPolyhedron, r_star: &QVector) -> Result<Option<(QVector, Branch)>> {
    let h = inst.q.h();
    let r = r_star.primitive();
    let set = MixedIntegerSet::new(part.clone(), inst.p)?;
    let Some(x0) = mip_point(&set)? else {
        return Ok(None);
    };
    let v1 = h.bilinear(&r, &r);
    let v2 = Rational::from_integer(2.into()) * h.bilinear(&x0, &r) + inst.q.c().dot(&r);
    let v3 = inst.q.eval(&x0)?;
    let lambda = case1_lambda(&v1, &v2, &v3);
    let x = x0.add_scaled(&from_int(lambda.clone()), &r);
    Ok(Some((x, Branch::Case1 { lambda })))
}

/// Result of a search inside one refined piece.
#[derive(Debug, Clone, PartialEq, Eq)]
enum PieceHit {
    Linear { direction: usize, mu: Integer },
    Bounded { eta: Vec<Integer>, bound: Integer },
}

/// Case 2: decompose, refine, and search every `(fiber, piece, offset)`.
pub fn case2_decompose(inst: &MiqpInstance, part: &HPolyhedron) -> Result<Option<(QVector, Branch)>> {
    let set = MixedIntegerSet::new(part.clone(), inst.p)?;
    let dec = decompose_mixed_integer_set(&set)?;
    let n = inst.dim();
    let refined: Vec<Vec<(SimpleCone, Vec<QVector>)>> = dec
        .ray_families
        .iter()
        .enumerate()
        .map(|(k, fam)| if dec.is_maximal(k) { refine_family(inst, fam) } else { Ok(Vec::new()) })
        .collect::<Result<_>>()?;

    let mut jobs = Vec::new();
    for (i, fiber) in dec.fibers.iter().enumerate() {
        for &k in fiber.families.iter().filter(|&&k| dec.is_maximal(k)) {
            for (j, (_, offsets)) in refined[k].iter().enumerate() {
                for t in 0..offsets.len() {
                    jobs.push((i, k, j, t));
                }
            }
        }
    }
    let hit = par::find_map_first(&jobs, |&(i, k, j, t)| {
        let (piece, offsets) = &refined[k][j];
        piece_search(inst, &dec.fibers[i], &offsets[t], piece.rays(), n)
            .transpose()
            .map(|r| r.map(|(x, hit)| (x, (i, k, j, t), hit)))
    });
    let Some((x, (fiber, family, piece, offset), hit)) = hit.transpose()? else {
        return Ok(None);
    };
    let branch = match hit {
        PieceHit::Linear { direction, mu } => Branch::Linear {
            fiber,
            family,
            piece,
            offset,
            direction,
            mu,
        },
        PieceHit::Bounded { eta, bound } => Branch::Bounded {
            fiber,
            family,
            piece,
            offset,
            eta,
            bound,
        },
    };
    Ok(Some((x, branch)))
}

/// Refined pieces of a family, each with the lattice offsets needed so that
/// integer points of the family cone inside the piece are reached by integer
/// steps along the piece rays.
fn refine_family(inst: &MiqpInstance, fam: &SimpleCone) -> Result<Vec<(SimpleCone, Vec<QVector>)>> {
    let n = inst.dim();
    if fam.num_rays() == 0 {
        return Ok(vec![(fam.clone(), vec![QVector::zeros(n)])]);
    }
    let dec = simple_cone_decomposition(inst.q.h(), fam)?;
    dec.pieces
        .into_iter()
        .map(|piece| {
            let offsets = lattice_offsets(fam, &piece)?;
            Ok((piece, offsets))
        })
        .collect()
}

/// Points `z` of `intcone(family)` with piece coordinates in `[0, 1)`.
///
/// Every integer point of `intcone(family) ∩ cone(piece)` is one of these
/// plus a nonnegative integer combination of the piece rays.
pub fn lattice_offsets(family: &SimpleCone, piece: &SimpleCone) -> Result<Vec<QVector>> {
    let n = family.ambient_dim();
    let mut same_rays = piece.rays().to_vec();
    same_rays.sort();
    let mut fam_rays = family.rays().to_vec();
    fam_rays.sort();
    if same_rays == fam_rays {
        return Ok(vec![QVector::zeros(n)]);
    }
    let k = family.num_rays();
    let mut upper = vec![Rational::zero(); k];
    for v in piece.rays() {
        let c = family
            .coordinates(v)
            .ok_or_else(|| Error::Internal(format!("piece ray {v} outside its family cone")))?;
        for (u, cl) in upper.iter_mut().zip(c) {
            *u += cl;
        }
    }
    // eta_l ranges over 0..ceil(upper_l)
    let ranges: Vec<Integer> = upper.iter().map(ceil).collect();
    let mut count: u64 = 1;
    for r in &ranges {
        count = count.saturating_mul(u64::try_from(r.max(&Integer::from(1))).unwrap_or(u64::MAX));
        if count > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                what: "lattice offsets",
                limit: ENUMERATION_LIMIT,
            });
        }
    }
    let one = Rational::from_integer(1.into());
    let mut out = Vec::new();
    let mut eta = vec![Integer::zero(); k];
    loop {
        let mu: Vec<Rational> = eta.iter().cloned().map(from_int).collect();
        let z = family.combination(&mu);
        if let Some(theta) = piece.coordinates(&z) {
            if theta.iter().all(|t| *t < one) {
                out.push(z);
            }
        }
        let mut l = 0;
        loop {
            if l == k {
                return Ok(out);
            }
            eta[l] += 1;
            if eta[l] < ranges[l] {
                break;
            }
            eta[l] = Integer::zero();
            l += 1;
        }
    }
}

fn piece_search(
    inst: &MiqpInstance,
    fiber: &Fiber,
    shift: &QVector,
    rays: &[QVector],
    n: usize,
) -> Result<Option<(QVector, PieceHit)>> {
    let h = inst.q.h();
    let verts: Vec<QVector> = fiber.vertices.iter().map(|v| v.add(shift)).collect();
    let (zero_curv, rest): (Vec<usize>, Vec<usize>) = (0..rays.len()).partition(|&j| h.bilinear(&rays[j], &rays[j]).is_zero());
    for &i in &zero_curv {
        if let Some((x0, slope)) = claim1_linear_search(&inst.q, i, &verts, rays) {
            let q0 = inst.q.eval(&x0)?;
            let mu = if q0.is_positive() {
                ceil(&(q0 / -slope))
            } else {
                Integer::zero()
            };
            let x = x0.add_scaled(&from_int(mu.clone()), &rays[i]);
            return Ok(Some((x, PieceHit::Linear { direction: i, mu })));
        }
    }
    let positive: Vec<QVector> = rest.iter().map(|&j| rays[j].clone()).collect();
    let found = claim2_bounded_solve(&inst.q, fiber, shift, &verts, &positive, n)?;
    Ok(found.map(|(x, eta_rest, bound)| {
        // report eta over all piece rays, zero on the linear directions
        let mut eta = vec![Integer::zero(); rays.len()];
        for (&j, e) in rest.iter().zip(eta_rest) {
            eta[j] = e;
        }
        (x, PieceHit::Bounded { eta, bound })
    }))
}

/// `2 x^T H r + c^T r`: the linear coefficient of `Q(x + mu r)` in `mu`.
fn linear_coefficient(q: &QuadraticForm, x: &QVector, r: &QVector) -> Rational {
    Rational::from_integer(2.into()) * q.h().bilinear(x, r) + q.c().dot(r)
}

/// Looks for a point `x` of `conv(vertices) + intcone(rays)` where moving
/// along `rays[i]` decreases `Q` linearly. Returns `x` and the (negative)
/// coefficient, or `None` when the coefficient is nonnegative everywhere.
pub fn claim1_linear_search(
    q: &QuadraticForm,
    i: usize,
    vertices: &[QVector],
    rays: &[QVector],
) -> Option<(QVector, Rational)> {
    let ri = &rays[i];
    let (value, p) = vertices
        .iter()
        .map(|v| (linear_coefficient(q, v, ri), v))
        .min()?;
    if value.is_negative() {
        return Some((p.clone(), value));
    }
    let two = Rational::from_integer(2.into());
    for (j, rj) in rays.iter().enumerate() {
        if j == i {
            continue;
        }
        let slope = &two * q.h().bilinear(rj, ri);
        if slope.is_negative() {
            // smallest eta >= 0 with value + eta * slope <= -1
            let eta = ceil(&((&value + Rational::from_integer(1.into())) / -&slope)).max(Integer::zero());
            let x = p.add_scaled(&from_int(eta), rj);
            let v = linear_coefficient(q, &x, ri);
            debug_assert!(v <= Rational::from_integer((-1).into()));
            return Some((x, v));
        }
    }
    None
}

/// Bounded search over `fiber + shift + intcone(rays)` where every ray has
/// positive curvature. Returns the point, the multipliers used and an
/// `inf`-norm bound on the searched region.
#[allow(clippy::type_complexity)]
pub fn claim2_bounded_solve(
    q: &QuadraticForm,
    fiber: &Fiber,
    shift: &QVector,
    vertices: &[QVector],
    rays: &[QVector],
    n: usize,
) -> Result<Option<(QVector, Vec<Integer>, Integer)>> {
    let fiber_norm = vertices.iter().map(QVector::max_abs).max().unwrap_or_default();
    if rays.is_empty() {
        let res = fiber.min_quadratic(q, shift)?;
        return Ok((!res.value.is_positive()).then(|| (res.minimizer, Vec::new(), ceil(&fiber_norm))));
    }
    let f = normalizing_hyperplane(n, rays)?.f;
    let weights: Vec<Rational> = rays.iter().map(|r| f.dot(r)).collect();
    let cone = SimpleCone::new(n, rays.to_vec())?;
    let v1 = min_on_simple_slice(q.h(), &cone, &f)?.result.value;
    if !v1.is_positive() {
        return Err(Error::Internal(format!(
            "curvature {v1} on a cone of positive-curvature rays"
        )));
    }
    let v2 = rays
        .iter()
        .zip(&weights)
        .flat_map(|(r, w)| {
            let s = r.scale(&w.recip());
            vertices.iter().map(move |p| linear_coefficient(q, p, &s))
        })
        .min()
        .expect("nonempty fiber and rays");
    let v3 = fiber.min_quadratic(q, shift)?.value;
    let four = Rational::from_integer(4.into());
    let two = Rational::from_integer(2.into());
    let disc = &v2 * &v2 - &four * &v1 * &v3;
    if disc.is_negative() {
        return Ok(None);
    }
    let cap = ceil_sqrt_quotient(&-&v2, &disc, &(&two * &v1));
    if cap.is_negative() {
        return Ok(None);
    }
    let cap_r = from_int(cap.clone());
    let stretch = rays
        .iter()
        .zip(&weights)
        .map(|(r, w)| r.max_abs() / w)
        .max()
        .expect("nonempty rays");
    let bound = ceil(&(fiber_norm + &cap_r * stretch));

    // Q(p + sum eta_j r_j) >= v1 l^2 + v2 l + v3 with l = sum eta_j w_j
    let poly = |l: &Rational| &v1 * l * l + &v2 * l + &v3;
    let mut etas = Vec::new();
    let mut cur = vec![Integer::zero(); rays.len()];
    enumerate_budget(&weights, &cap_r, 0, Rational::zero(), &mut cur, &mut |eta, l| {
        if !poly(l).is_positive() {
            etas.push(eta.to_vec());
        }
        etas.len() as u64 <= ENUMERATION_LIMIT
    });
    if etas.len() as u64 > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            what: "bounded multiplier search",
            limit: ENUMERATION_LIMIT,
        });
    }
    let hit = par::find_map_first(&etas, |eta| {
        let s = rays
            .iter()
            .zip(eta)
            .fold(shift.clone(), |acc, (r, e)| acc.add_scaled(&from_int(e.clone()), r));
        match fiber.min_quadratic(q, &s) {
            Ok(res) if !res.value.is_positive() => Some(Ok((res.minimizer, eta.clone()))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    });
    Ok(hit.transpose()?.map(|(x, eta)| (x, eta, bound)))
}

/// Visits every `eta >= 0` with `sum eta_j w_j <= cap`, lexicographically.
/// Stops early once `visit` returns `false`.
fn enumerate_budget(
    w: &[Rational],
    cap: &Rational,
    j: usize,
    used: Rational,
    cur: &mut Vec<Integer>,
    visit: &mut dyn FnMut(&[Integer], &Rational) -> bool,
) -> bool {
    if j == w.len() {
        return visit(cur, &used);
    }
    let mut l = used;
    loop {
        if &l > cap {
            break;
        }
        if !enumerate_budget(w, cap, j + 1, l.clone(), cur, visit) {
            return false;
        }
        cur[j] += 1;
        l += &w[j];
    }
    cur[j] = Integer::zero();
    true
}

//! Randomized invariants of the exact kernels, each checked against an
//! independent computation.

use std::collections::BTreeSet;

use num_traits::Signed;
use proptest::prelude::*;

use miqp_core::exact::{frac, rat, solve_linear_system, LinearSolution};
use miqp_core::polyhedra::{caratheodory_simple_cone, h_to_v, is_pointed, orthant_split, vertices};
use miqp_core::qp::qp_global_min;
use miqp_core::{Encoded, HPolyhedron, QMatrix, QVector, QuadraticForm};

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> QMatrix {
    let rows: Vec<QVector> = entries.chunks(cols).take(rows).map(QVector::from_i64).collect();
    QMatrix::from_rows(cols, rows).unwrap()
}

fn small_matrix(max_rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max_rows).prop_flat_map(move |r| {
        prop::collection::vec(-3i64..=3, r * cols).prop_map(move |e| matrix(r, cols, &e))
    })
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    (0..n)
        .flat_map(|last| {
            subsets(last, k - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// A box in `R^n` cut by extra random rows, so every instance is bounded.
fn bounded_polytope(n: usize) -> impl Strategy<Value = HPolyhedron> {
    (
        prop::collection::vec(-3i64..=3, 2 * n),
        prop::collection::vec(-2i64..=2, 3 * n),
        prop::collection::vec(0i64..=4, 3),
    )
        .prop_map(move |(bounds, cuts, rhs)| {
            let mut p = HPolyhedron::universe(n);
            for i in 0..n {
                let (lo, hi) = (bounds[2 * i].min(bounds[2 * i + 1]), bounds[2 * i].max(bounds[2 * i + 1]));
                p.push_row(QVector::unit(n, i), rat(hi));
                p.push_row(QVector::unit(n, i).neg(), rat(-lo));
            }
            for (row, b) in cuts.chunks(n).zip(rhs) {
                p.push_row(QVector::from_i64(row), rat(b));
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_equals_rank_of_transpose(m in small_matrix(4, 3)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn linear_solutions_satisfy_the_system(m in small_matrix(4, 3), rhs in prop::collection::vec(-4i64..=4, 4)) {
        let b = QVector::from_i64(&rhs[..m.rows()]);
        match solve_linear_system(&m, &b).unwrap() {
            LinearSolution::Unique(x) => {
                prop_assert_eq!(m.mul_vec(&x).unwrap(), b);
                prop_assert_eq!(m.rank(), 3);
            }
            LinearSolution::Affine { particular, nullspace } => {
                prop_assert_eq!(m.mul_vec(&particular).unwrap(), b);
                prop_assert_eq!(nullspace.len(), 3 - m.rank());
                for v in &nullspace {
                    prop_assert!(m.mul_vec(v).unwrap().is_zero());
                }
            }
            LinearSolution::Infeasible => {
                let mut augmented = QMatrix::zeros(m.rows(), 4);
                for i in 0..m.rows() {
                    for j in 0..3 {
                        augmented.set(i, j, m.get(i, j).clone());
                    }
                    augmented.set(i, 3, b[i].clone());
                }
                prop_assert!(augmented.rank() > m.rank());
            }
        }
    }

    #[test]
    fn encoding_size_is_subadditive(a in -1000i64..=1000, b in 1i64..=1000, c in -1000i64..=1000, d in 1i64..=1000) {
        let (x, y) = (frac(a, b), frac(c, d));
        let (sx, sy) = (x.encoding_size().bits(), y.encoding_size().bits());
        prop_assert!((&x * &y).encoding_size().bits() <= sx + sy);
        prop_assert!((&x + &y).encoding_size().bits() <= 2 * (sx + sy));
        let v = QVector::new(vec![x, y]);
        prop_assert!(v.encoding_size().bits() >= sx + sy);
    }

    #[test]
    fn vertices_match_basic_feasible_solutions(p in bounded_polytope(2)) {
        // oracle: solve every 2-row subsystem directly
        let mut expected = BTreeSet::new();
        for rows in subsets(p.num_constraints(), 2) {
            let a = p.a().select_rows(&rows);
            let b: QVector = rows.iter().map(|&i| p.b()[i].clone()).collect();
            if let LinearSolution::Unique(x) = solve_linear_system(&a, &b).unwrap() {
                if p.contains(&x) {
                    expected.insert(x);
                }
            }
        }
        let found: BTreeSet<QVector> = vertices(&p).unwrap().into_iter().collect();
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn v_representation_stays_inside(p in bounded_polytope(3), w in prop::collection::vec(0i64..=5, 8)) {
        let v = h_to_v(&p).unwrap();
        prop_assert!(v.rays.is_empty());
        if let Some(first) = v.first_vertex() {
            prop_assert!(v.vertices.iter().all(|x| x >= first));
            let total: i64 = w.iter().take(v.vertices.len()).sum::<i64>().max(1);
            let point = v
                .vertices
                .iter()
                .zip(&w)
                .fold(QVector::zeros(3), |acc, (x, &wi)| acc.add_scaled(&frac(wi, total), x));
            if w.iter().take(v.vertices.len()).sum::<i64>() > 0 {
                prop_assert!(p.contains(&point));
            }
        }
    }

    #[test]
    fn orthant_parts_partition_membership(m in small_matrix(3, 2), b in prop::collection::vec(0i64..=3, 3), x in prop::collection::vec(-6i64..=6, 2)) {
        let p = HPolyhedron::new(m.clone(), QVector::from_i64(&b[..m.rows()])).unwrap();
        let parts = orthant_split(&p);
        prop_assert_eq!(parts.len(), 4);
        let x = QVector::from_i64(&x);
        let hits = parts.iter().filter(|part| part.poly.contains(&x)).count();
        prop_assert_eq!(hits > 0, p.contains(&x));
        for part in &parts {
            prop_assert!(is_pointed(&part.poly));
        }
    }

    #[test]
    fn caratheodory_reproduces_the_point(rays in prop::collection::vec(prop::collection::vec(-2i64..=3, 3), 1..=5), mu in prop::collection::vec(0i64..=4, 5)) {
        let rays: Vec<QVector> = rays.iter().map(|r| QVector::from_i64(r)).collect();
        let r = rays.iter().zip(&mu).fold(QVector::zeros(3), |acc, (v, &m)| acc.add_scaled(&rat(m), v));
        let (idx, coef) = caratheodory_simple_cone(&rays, &r).unwrap();
        prop_assert!(coef.iter().all(|c| !c.is_negative()));
        let sub = QMatrix::from_rows(3, idx.iter().map(|&i| rays[i].clone()).collect()).unwrap();
        prop_assert_eq!(sub.rank(), idx.len());
        let back = idx.iter().zip(&coef).fold(QVector::zeros(3), |acc, (&i, c)| acc.add_scaled(c, &rays[i]));
        prop_assert_eq!(back, r);
    }

    #[test]
    fn qp_minimum_is_below_every_sampled_point(
        p in bounded_polytope(2),
        h in prop::collection::vec(-3i64..=3, 3),
        c in prop::collection::vec(-3i64..=3, 2),
    ) {
        let hm = QMatrix::from_i64(&[&[h[0], h[1]], &[h[1], h[2]]]);
        let q = QuadraticForm::new(hm, QVector::from_i64(&c), rat(0)).unwrap();
        let vs = vertices(&p).unwrap();
        match qp_global_min(&q, &p) {
            Ok(res) => {
                prop_assert!(p.contains(&res.minimizer));
                prop_assert_eq!(q.eval(&res.minimizer).unwrap(), res.value.clone());
                // vertices and their pairwise midpoints
                for a in &vs {
                    for b in &vs {
                        let mid = a.add(b).scale(&frac(1, 2));
                        prop_assert!(res.value <= q.eval(&mid).unwrap());
                    }
                }
            }
            Err(_) => prop_assert!(vs.is_empty()),
        }
    }
}

#[test]
fn subset_helper_counts() {
    assert_eq!(subsets(5, 2).len(), 10);
    assert_eq!(subsets(4, 0), vec![Vec::<usize>::new()]);
}

//! Property tests for the structural invariants, on randomly generated families.

mod common;

use std::collections::HashSet;

use common::{random_family, random_rhs};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use toric_relax::groebner::CostOrder;
use toric_relax::hilbert::{hilbert_basis, normality_report};
use toric_relax::linalg::smith_invariants;
use toric_relax::lp::{LinearProgram, LpOutcome, Relation};
use toric_relax::oracle::{fiber_solve, relaxation_points, relaxation_polytope, width_along};
use toric_relax::stdpairs::normalized_volume_sum;
use toric_relax::*;

fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// All vectors in `[0, hi]^n`.
fn box_points(hi: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &h in hi {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (0..=h).map(move |v| {
                    let mut p = p.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn lattice_basis_is_saturated_kernel(seed in 0u64..100_000) {
        let f = random_family(seed);
        let n = f.a.ncols();
        for col in f.lattice.columns_i64() {
            prop_assert!(f.a.apply_i64(col).iter().all(|&x| x == 0));
        }
        if f.lattice.rank() > 0 {
            let rows: Vec<Vec<BigInt>> = (0..n).map(|i| f.lattice.row_i64(i).into_iter().map(BigInt::from).collect()).collect();
            let inv = smith_invariants(&rows, f.lattice.rank());
            prop_assert_eq!(inv.len(), f.lattice.rank());
            prop_assert!(inv.iter().all(|x| x.is_one()));
        }
        let g = gcd_maximal_minors(&f.a);
        for sigma in Face::combinations(n, f.a.nrows()) {
            let det = face_determinant(&f.a, sigma).unwrap();
            prop_assert!((det % &g).is_zero());
        }
    }

    #[test]
    fn unbounded_families_are_rejected(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 2)) {
        let nonneg_kernel = box_points(&[3, 3, 3, 3])
            .into_iter()
            .filter(|x| x.iter().any(|&v| v > 0))
            .any(|x| rows.iter().all(|r| dot(r, &x) == 0));
        match IntMatrix::from_i64(&rows) {
            Ok(_) => prop_assert!(!nonneg_kernel),
            Err(Error::UnboundedFamily) => {}
            Err(Error::RankDeficient { .. }) => {}
            Err(e) => prop_assert!(false, "unexpected {e:?}"),
        }
        if nonneg_kernel {
            prop_assert!(IntMatrix::from_i64(&rows).is_err());
        }
    }

    #[test]
    fn certificates_and_optimal_faces(seed in 0u64..100_000) {
        let f = random_family(seed);
        let (d, n) = (f.a.nrows(), f.a.ncols());
        for (&sigma, y) in f.delta.certificates() {
            for j in 0..n {
                let v: BigRational = y.iter().zip(f.a.column(j)).map(|(yi, a)| yi * BigRational::from_integer(a)).sum();
                let cj = q(f.weight[j]);
                let ok = if sigma.contains(j) { v == cj } else { v < cj };
                prop_assert!(ok);
            }
        }
        // b strictly inside cone(A_τ) for a face τ: the LP optimum has support τ
        for tau in f.delta.all_faces() {
            let b: Vec<i64> = (0..d).map(|i| tau.iter().map(|j| f.a.entry_i64(i, j) * (j as i64 + 1)).sum()).collect();
            let bb: Vec<BigInt> = b.iter().map(|&x| BigInt::from(x)).collect();
            prop_assert_eq!(f.delta.optimal_face(&bb).unwrap(), tau);
            let mut lp = LinearProgram::nonnegative(n);
            for i in 0..d {
                lp.add((0..n).map(|j| q(f.a.entry_i64(i, j))).collect(), Relation::Eq, q(b[i]));
            }
            let obj: Vec<BigRational> = f.weight.iter().map(|&c| q(c)).collect();
            let LpOutcome::Optimal { point, .. } = lp.minimize(&obj) else {
                return Err(TestCaseError::fail("LP not optimal"));
            };
            let support = Face::from_indices((0..n).filter(|&j| !point[j].is_zero()));
            prop_assert_eq!(support, tau);
        }
    }

    #[test]
    fn graded_volume_is_triangulation_independent(
        rest in prop::collection::vec(prop::collection::vec(0i64..=3, 5), 2),
        c1 in prop::collection::vec(-9i64..=9, 5),
        c2 in prop::collection::vec(-9i64..=9, 5),
    ) {
        let mut rows = vec![vec![1; 5]];
        rows.extend(rest);
        let Ok(a) = IntMatrix::from_i64(&rows) else { return Ok(()); };
        let t1 = regular_subdivision(&a, &c1);
        let t2 = regular_subdivision(&a, &c2);
        if t1.is_triangulation() && t2.is_triangulation() {
            prop_assert_eq!(normalized_volume_sum(&a, &t1), normalized_volume_sum(&a, &t2));
        }
    }

    #[test]
    fn groebner_order_ideal_and_test_set(seed in 0u64..100_000) {
        let f = random_family(seed);
        let n = f.a.ncols();
        let gb = &f.groebner;
        let order = CostOrder::new(f.cost.clone());
        for b in random_rhs(&f, seed, 5) {
            let opt = f.solve(&b).unwrap();
            let below: Vec<i64> = opt.iter().map(|&x| x.min(2)).collect();
            for v in box_points(&below) {
                prop_assert_eq!(gb.normal_form(&v), v);
            }
        }
        // test-set property and injectivity of A on normal forms, in a small box
        let mut images = HashSet::new();
        for u in box_points(&vec![2; n]) {
            let best = fiber_solve(&f.a, &order, &f.a.apply_i64(&u)).unwrap().unwrap();
            if best != u {
                let improves = gb.vectors().iter().any(|v| {
                    u.iter().zip(v).all(|(&x, &y)| x >= y.max(0)) && order.value(v) > 0
                });
                prop_assert!(improves, "no improving move at {:?}", u);
            } else {
                prop_assert!(images.insert(f.a.apply_i64(&u)));
            }
        }
    }

    #[test]
    fn standard_pairs_cover_and_are_maximal(seed in 0u64..100_000) {
        let f = random_family(seed);
        let n = f.a.ncols();
        let ideal = &f.ideal;
        let hi: Vec<i64> = (0..n).map(|i| ideal.max_exponent(i)).collect();
        for u in box_points(&hi) {
            if !ideal.contains(&u) {
                prop_assert!(!f.decomposition.covering_pairs(&u).is_empty(), "{:?} uncovered", u);
            }
        }
        for p in f.decomposition.pairs() {
            prop_assert!(!ideal.contains(&p.root));
            for i in p.face.iter() {
                let mut v = p.root.clone();
                v[i] += 3;
                prop_assert!(!ideal.contains(&v));
            }
            for i in (0..n).filter(|&i| !p.face.contains(i)) {
                let grown = p.face.insert(i);
                let blocked = ideal.generators().iter().any(|g| {
                    (0..n).filter(|&j| !grown.contains(j)).all(|j| g[j] <= p.root[j])
                });
                prop_assert!(blocked, "pair on {} grows by {}", p.face, i + 1);
            }
        }
        let zero = vec![0i64; n];
        for tau in f.delta.all_faces() {
            let has = f.decomposition.pairs().iter().any(|p| p.face == tau && p.root == zero);
            prop_assert_eq!(has, f.delta.is_maximal(tau));
        }
        let g = gcd_maximal_minors(&f.a);
        let mut total = BigInt::zero();
        for &s in f.delta.maximal_faces() {
            let m = face_determinant(&f.a, s).unwrap().magnitude().clone() / g.magnitude();
            prop_assert_eq!(BigInt::from(f.decomposition.multiplicity(s)), BigInt::from(m.clone()));
            total += BigInt::from(m);
        }
        prop_assert!(BigInt::from(f.decomposition.arithmetic_degree()) >= total);
    }

    #[test]
    fn relaxations_are_monotone_and_lift_correctly(seed in 0u64..100_000) {
        let f = random_family(seed);
        let faces = f.delta.all_faces();
        for b in random_rhs(&f, seed, 6) {
            let opt = f.solve(&b).unwrap();
            let ip_value = dot(&f.weight, &opt);
            prop_assert_eq!(f.solve_via_pairs(&b).unwrap(), opt.clone());
            let mut solving = Vec::new();
            for &tau in &faces {
                let r = f.relax(tau, &b).unwrap();
                prop_assert_eq!(f.a.apply_i64(&r.x), b.clone());
                prop_assert!(r.value <= ip_value);
                prop_assert_eq!(r.value == ip_value, r.solves_ip);
                if r.solves_ip {
                    prop_assert_eq!(&r.x, &opt);
                    solving.push(tau);
                }
            }
            prop_assert!(solving.contains(&Face::EMPTY));
            for &tau in &solving {
                for sub in tau.subsets() {
                    if f.delta.contains_face(sub) {
                        prop_assert!(solving.contains(&sub), "{} solves but {} does not", tau, sub);
                    }
                }
            }
        }
    }

    #[test]
    fn optimality_is_an_empty_polytope(seed in 0u64..100_000) {
        let f = random_family(seed);
        let n = f.a.ncols();
        if f.lattice.rank() == 0 {
            return Ok(());
        }
        let order = CostOrder::new(f.cost.clone());
        for u in box_points(&vec![2; n]) {
            let best = fiber_solve(&f.a, &order, &f.a.apply_i64(&u)).unwrap().unwrap();
            let pts = relaxation_points(&f.lattice, &f.weight, Face::EMPTY, &u).unwrap();
            let only_zero = pts.len() == 1 && pts[0].iter().all(|&z| z == 0);
            prop_assert_eq!(best == u, only_zero);
        }
    }

    #[test]
    fn standard_polytopes_are_thin(seed in 0u64..100_000) {
        let f = random_family(seed);
        let k = f.lattice.rank();
        if k == 0 {
            return Ok(());
        }
        for p in f.decomposition.pairs() {
            let poly = relaxation_polytope(&f.lattice, &f.weight, p.face, &p.root).unwrap();
            let m = poly.rows().iter().map(|r| r.iter().map(|x| x.abs()).sum::<i64>()).max().unwrap();
            let thinnest = poly
                .rows()
                .iter()
                .map(|r| width_along(&poly, r).unwrap())
                .min()
                .unwrap();
            prop_assert!(thinnest <= q(m * (k as i64 + 2)), "width {} on {}", thinnest, p.face);
        }
    }

    #[test]
    fn hilbert_basis_is_minimal_and_generating(
        gens in prop::collection::vec(prop::collection::vec(0i64..=4, 3), 1..=4)
    ) {
        prop_assume!(gens.iter().any(|g| g.iter().any(|&x| x != 0)));
        let hb = hilbert_basis(&gens, 3).unwrap();
        let elems = hb.elements();
        let in_cone = |x: &[i64]| {
            let mut lp = LinearProgram::nonnegative(gens.len());
            for i in 0..3 {
                lp.add(gens.iter().map(|g| q(g[i])).collect(), Relation::Eq, q(x[i]));
            }
            lp.feasible_point().is_some()
        };
        for h in elems {
            prop_assert!(in_cone(h));
            let others: Vec<Vec<i64>> = elems.iter().filter(|e| *e != h).cloned().collect();
            prop_assert!(!in_semigroup(h, &others, &mut HashSet::new()), "{:?} is redundant", h);
        }
        for x in box_points(&[4, 4, 4]) {
            if in_cone(&x) {
                prop_assert!(in_semigroup(&x, elems, &mut HashSet::new()), "{:?} not generated", x);
            }
        }
    }

    #[test]
    fn normality_implications(seed in 0u64..100_000) {
        let f = random_family(seed);
        prop_assume!(f.a.ncols() <= 5);
        let r = normality_report(&f.a, Some(&f.delta), true).unwrap();
        if r.delta.as_ref().unwrap().delta_normal {
            prop_assert!(r.normal);
        }
        if r.supernormal.as_ref().unwrap().supernormal {
            prop_assert!(r.delta.unwrap().delta_normal);
        }
    }
}

/// Is x a nonnegative integer combination of `elems` (all nonnegative vectors)?
fn in_semigroup(x: &[i64], elems: &[Vec<i64>], failed: &mut HashSet<Vec<i64>>) -> bool {
    if x.iter().all(|&v| v == 0) {
        return true;
    }
    if failed.contains(x) {
        return false;
    }
    for h in elems {
        let rest: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
        if rest.iter().all(|&v| v >= 0) && in_semigroup(&rest, elems, failed) {
            return true;
        }
    }
    failed.insert(x.to_vec());
    false
}

//! Group relaxations `G^τ(b)`: drop nonnegativity on the coordinates of a face τ of Δ.
//!
//! In lattice coordinates the relaxation reads `min (−wB)·z` over integer z with
//! `B^τ̄ z ≤ π_τ(u)` for any fiber point u. The optimum has nonpositive objective, so
//! the cut `(−wB)·z ≤ 0` bounds the search.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::face::Face;
use crate::fiber;
use crate::linalg::{self, QRow};
use crate::matrix::{IntMatrix, LatticeBasis};
use crate::oracle::{self, PolytopeFamily};
use crate::stdpairs::Decomposition;
use crate::triangulation::RegularTriangulation;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRelaxation {
    pub face: Face,
    pub rhs: Vec<i64>,
    /// A point of the fiber.
    pub point: Vec<i64>,
    /// Rows of B off the face, with their column indices.
    pub rows: Vec<(usize, Vec<i64>)>,
    /// Lowest maximal face containing τ, used for the reduced cost.
    pub sigma: Face,
    /// `w − yA` on the coordinates off τ, where `yA_σ = w_σ`.
    pub reduced_cost: Vec<(usize, BigRational)>,
    /// `−wB`
    pub objective: Vec<i64>,
    cost: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelaxationOutcome {
    pub z: Vec<i64>,
    /// The lifted point: off τ from `π_τ(u) − B^τ̄ z`, on τ from `A_τ x_τ = b − A_τ̄ x_τ̄`.
    pub x: Vec<i64>,
    pub value: i128,
    /// No other lattice point attains the optimum.
    pub unique: bool,
    /// The optimum is unique and the lift is nonnegative.
    pub solves_ip: bool,
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Assemble `G^τ(b)` for the cost w that produced Δ.
pub fn build_relaxation(
    a: &IntMatrix,
    lattice: &LatticeBasis,
    cost: &[i64],
    delta: &RegularTriangulation,
    tau: Face,
    b: &[i64],
) -> Result<GroupRelaxation> {
    let n = a.ncols();
    if cost.len() != n {
        return Err(Error::Dimension(format!("cost has length {}, expected {n}", cost.len())));
    }
    if tau.iter().any(|i| i >= n) {
        return Err(Error::BadIndex(format!("face {tau} exceeds {n} columns")));
    }
    if !delta.contains_face(tau) {
        return Err(Error::NotAFace(tau.to_string()));
    }
    let sigma = delta
        .lowest_maximal_containing(tau)
        .ok_or_else(|| Error::NotAFace(tau.to_string()))?;
    let point = fiber::first_fiber_point(a, b)?.ok_or(Error::Infeasible)?;
    // y A_σ = w_σ
    let m: Vec<QRow> = sigma
        .iter()
        .map(|j| a.column(j).into_iter().map(BigRational::from_integer).collect())
        .collect();
    let rhs: QRow = sigma.iter().map(|j| BigRational::from_integer(cost[j].into())).collect();
    let y = linalg::solve_full_column_rank(&m, &rhs).ok_or(Error::NotSimplicial)?;
    let reduced_cost = (0..n)
        .filter(|&j| !tau.contains(j))
        .map(|j| {
            let ya: BigRational = a
                .column(j)
                .into_iter()
                .zip(&y)
                .map(|(x, yi)| BigRational::from_integer(x) * yi)
                .sum();
            (j, BigRational::from_integer(cost[j].into()) - ya)
        })
        .collect();
    Ok(GroupRelaxation {
        face: tau,
        rhs: b.to_vec(),
        point,
        rows: lattice.projected_rows(tau),
        sigma,
        reduced_cost,
        objective: oracle::cost_row(lattice, cost)?,
        cost: cost.to_vec(),
    })
}

impl GroupRelaxation {
    /// `c̃_τ̄ · B^τ̄`, which equals `wB`.
    pub fn reduced_cost_times_basis(&self) -> Vec<BigRational> {
        let k = self.objective.len();
        (0..k)
            .map(|j| {
                self.rows
                    .iter()
                    .zip(&self.reduced_cost)
                    .map(|((_, r), (_, c))| c * BigRational::from_integer(BigInt::from(r[j])))
                    .sum()
            })
            .collect()
    }

    fn offsets(&self) -> Vec<i64> {
        let mut h: Vec<i64> = self.rows.iter().map(|(i, _)| self.point[*i]).collect();
        h.push(0);
        h
    }
}

/// Optimal lattice point of the relaxation, lifted to all coordinates. Ties in the
/// objective are broken by the lexicographically smallest lifted point.
pub fn solve_relaxation(
    a: &IntMatrix,
    lattice: &LatticeBasis,
    r: &GroupRelaxation,
) -> Result<RelaxationOutcome> {
    let n = a.ncols();
    let k = lattice.rank();
    let lift = |z: &[i64]| -> Vec<i64> {
        let bz = lattice.apply_i64(z);
        r.point.iter().zip(&bz).map(|(u, v)| u - v).collect()
    };
    let mut best: Option<(i128, Vec<i64>, Vec<i64>)> = None;
    let mut ties = 0usize;
    if k == 0 {
        best = Some((0, Vec::new(), r.point.clone()));
        ties = 1;
    } else {
        let mut rows: Vec<Vec<i64>> = r.rows.iter().map(|(_, row)| row.clone()).collect();
        rows.push(r.objective.clone());
        let family = PolytopeFamily::new(k, &rows)?;
        family.for_each_point(&r.offsets(), &mut |z| {
            let val = dot(&r.objective, z);
            let x = lift(z);
            let (better, tie) = match &best {
                None => (true, false),
                Some((bv, _, bx)) => (val < *bv || (val == *bv && x < *bx), val == *bv),
            };
            if tie {
                ties += 1;
            } else if better {
                ties = 1;
            }
            if better {
                best = Some((val, z.to_vec(), x));
            }
            true
        });
    }
    let (_, z, x) = best.ok_or_else(|| Error::Internal("relaxation polytope lost the origin".into()))?;
    let x_tau = lift_face(a, r, &x)?;
    let mut x_full = x.clone();
    for (j, v) in r.face.iter().zip(&x_tau) {
        x_full[j] = *v;
    }
    debug_assert_eq!(x_full, x);
    let value = dot(&r.cost, &x_full);
    let unique = ties == 1;
    let solves_ip = unique && x_full.iter().all(|&v| v >= 0);
    debug_assert_eq!(x_full.len(), n);
    Ok(RelaxationOutcome {
        z,
        x: x_full,
        value,
        unique,
        solves_ip,
    })
}

/// Solve `A_τ x_τ = b − A_τ̄ x_τ̄` exactly.
fn lift_face(a: &IntMatrix, r: &GroupRelaxation, x: &[i64]) -> Result<Vec<i64>> {
    if r.face.is_empty() {
        return Ok(Vec::new());
    }
    let d = a.nrows();
    let rest: Vec<BigRational> = (0..d)
        .map(|i| {
            let off: i128 = (0..a.ncols())
                .filter(|&j| !r.face.contains(j))
                .map(|j| a.entry_i64(i, j) as i128 * x[j] as i128)
                .sum();
            BigRational::from_integer(BigInt::from(r.rhs[i] as i128 - off))
        })
        .collect();
    let m: Vec<QRow> = (0..d)
        .map(|i| {
            r.face
                .iter()
                .map(|j| BigRational::from_integer(a.entry(i, j).clone()))
                .collect()
        })
        .collect();
    let sol = linalg::solve_full_column_rank(&m, &rest)
        .ok_or_else(|| Error::Internal("lift system is inconsistent".into()))?;
    sol.iter()
        .map(|v| {
            if v.is_integer() {
                i64::try_from(v.to_integer()).map_err(|_| Error::Overflow)
            } else {
                Err(Error::Internal("lift is not integral".into()))
            }
        })
        .collect()
}

/// Solve the program from the standard pairs: for each pair `(u, τ)`, solve
/// `A_τ x = b − A_τ̄ π_τ(u)` and return the first nonnegative integral solution.
/// Pairs on maximal faces are tried first, then by decreasing face size.
pub fn solve_via_standard_pairs(
    a: &IntMatrix,
    decomposition: &Decomposition,
    delta: &RegularTriangulation,
    b: &[i64],
) -> Result<Vec<i64>> {
    let d = a.nrows();
    if b.len() != d {
        return Err(Error::Dimension(format!("rhs has length {}, expected {d}", b.len())));
    }
    let mut pairs: Vec<_> = decomposition.pairs().iter().collect();
    pairs.sort_by_key(|p| (!delta.is_maximal(p.face), std::cmp::Reverse(p.face.len())));
    for p in pairs {
        let au = a.apply_i64(&p.root);
        let rest: Vec<BigRational> = (0..d)
            .map(|i| BigRational::from_integer(BigInt::from(b[i] as i128 - au[i] as i128)))
            .collect();
        let x_tau: Vec<BigRational> = if p.face.is_empty() {
            if rest.iter().any(|v| !v.is_zero()) {
                continue;
            }
            Vec::new()
        } else {
            let m: Vec<QRow> = (0..d)
                .map(|i| p.face.iter().map(|j| BigRational::from_integer(a.entry(i, j).clone())).collect())
                .collect();
            match linalg::solve_full_column_rank(&m, &rest) {
                Some(s) => s,
                None => continue,
            }
        };
        if x_tau.iter().all(|v| v.is_integer() && v >= &BigRational::zero()) {
            let mut x = p.root.clone();
            for (j, v) in p.face.iter().zip(&x_tau) {
                x[j] = i64::try_from(v.to_integer()).map_err(|_| Error::Overflow)?;
            }
            return Ok(x);
        }
    }
    Err(Error::Infeasible)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{toric_groebner, CostOrder};
    use crate::stdpairs::{initial_ideal, standard_pair_decomposition};
    use crate::regular_subdivision;

    fn knapsack() -> (IntMatrix, LatticeBasis, Vec<i64>, RegularTriangulation) {
        let a = IntMatrix::from_i64(&[vec![2, 5, 8]]).unwrap();
        let l = LatticeBasis::from_i64_columns(&a, &[vec![-1, 2, -1], vec![4, 0, -1]]).unwrap();
        let c = vec![10000, 100, 1];
        let delta = regular_subdivision(&a, &c);
        (a, l, c, delta)
    }

    #[test]
    fn knapsack_relaxations() {
        let (a, l, c, delta) = knapsack();
        let three = Face::from_indices([2]);
        let r = build_relaxation(&a, &l, &c, &delta, three, &[40]).unwrap();
        assert_eq!(r.rows, vec![(0, vec![-1, 4]), (1, vec![2, 0])]);
        let wb: Vec<BigRational> = [-9801i64, 39999]
            .iter()
            .map(|&x| BigRational::from_integer(x.into()))
            .collect();
        assert_eq!(r.reduced_cost_times_basis(), wb);
        let o = solve_relaxation(&a, &l, &r).unwrap();
        assert_eq!(o.x, vec![0, 0, 5]);
        assert!(o.solves_ip);

        let r = build_relaxation(&a, &l, &c, &delta, three, &[2]).unwrap();
        let o = solve_relaxation(&a, &l, &r).unwrap();
        assert_eq!(o.x, vec![0, 2, -1]);
        assert!(!o.solves_ip);
        assert!(o.value < 10000);

        let r = build_relaxation(&a, &l, &c, &delta, three, &[0]).unwrap();
        let o = solve_relaxation(&a, &l, &r).unwrap();
        assert_eq!((o.z.clone(), o.solves_ip), (vec![0, 0], true));

        assert!(matches!(
            build_relaxation(&a, &l, &c, &delta, Face::from_indices([0]), &[4]),
            Err(Error::NotAFace(_))
        ));
        assert!(matches!(
            build_relaxation(&a, &l, &c, &delta, three, &[3]),
            Err(Error::Infeasible)
        ));
    }

    #[test]
    fn empty_face_is_the_program() {
        let (a, l, c, delta) = knapsack();
        for b in [2, 7, 19, 27, 41] {
            let r = build_relaxation(&a, &l, &c, &delta, Face::EMPTY, &[b]).unwrap();
            let o = solve_relaxation(&a, &l, &r).unwrap();
            let expect = fiber::fiber_minimum(&a, &CostOrder::new(c.clone()), &[b]).unwrap().unwrap();
            assert_eq!(o.x, expect);
            assert!(o.solves_ip);
        }
    }

    #[test]
    fn knapsack_via_pairs() {
        let (a, _, c, delta) = knapsack();
        let gb = toric_groebner(&a, &CostOrder::new(c.clone())).unwrap();
        let d = standard_pair_decomposition(&initial_ideal(&gb).unwrap(), &delta).unwrap();
        assert_eq!(solve_via_standard_pairs(&a, &d, &delta, &[27]).unwrap(), vec![1, 5, 0]);
        assert_eq!(solve_via_standard_pairs(&a, &d, &delta, &[16]).unwrap(), vec![0, 0, 2]);
        assert_eq!(solve_via_standard_pairs(&a, &d, &delta, &[7]).unwrap(), vec![1, 1, 0]);
        assert!(matches!(solve_via_standard_pairs(&a, &d, &delta, &[3]), Err(Error::Infeasible)));
        for b in 0..60 {
            let expect = fiber::fiber_minimum(&a, gb.order(), &[b]).unwrap();
            assert_eq!(solve_via_standard_pairs(&a, &d, &delta, &[b]).ok(), expect, "b = {b}");
        }
    }
}

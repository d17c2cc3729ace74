//! Standard-pair decompositions of the order ideal of optimal solutions, associated
//! sets and their chain structure.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::face::Face;
use crate::groebner::GroebnerBasis;
use crate::triangulation::RegularTriangulation;
use crate::{Error, Result};

/// A monomial ideal given by its minimal generators (exponent vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<Vec<i64>>,
}

fn divides(e: &[i64], u: &[i64]) -> bool {
    e.iter().zip(u).all(|(a, b)| a <= b)
}

impl MonomialIdeal {
    /// Keeps the minimal elements of `generators`, sorted.
    pub fn new(n: usize, generators: Vec<Vec<i64>>) -> MonomialIdeal {
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for (i, g) in generators.iter().enumerate() {
            let redundant = generators
                .iter()
                .enumerate()
                .any(|(k, h)| k != i && divides(h, g) && (h != g || k < i));
            if !redundant {
                gens.push(g.clone());
            }
        }
        gens.sort();
        MonomialIdeal {
            n,
            generators: gens,
        }
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn contains(&self, u: &[i64]) -> bool {
        self.generators.iter().any(|e| divides(e, u))
    }

    /// Largest exponent of variable i among the generators.
    pub fn max_exponent(&self, i: usize) -> i64 {
        self.generators.iter().map(|e| e[i]).max().unwrap_or(0)
    }

    /// `u + N(e_i : i ∈ τ)` misses the ideal.
    pub fn is_admissible(&self, u: &[i64], tau: Face) -> bool {
        self.generators
            .iter()
            .all(|e| (0..self.n).any(|i| !tau.contains(i) && e[i] > u[i]))
    }
}

/// `in(I_A)` from the leading terms of a reduced basis. Fails when some element has
/// equal cost on both terms, since `in_c(I_A)` is then not a monomial ideal.
pub fn initial_ideal(gb: &GroebnerBasis) -> Result<MonomialIdeal> {
    if let Some(b) = gb.tied_element() {
        return Err(Error::NonMonomial {
            witness: b.vector(),
        });
    }
    Ok(MonomialIdeal::new(gb.ncols(), gb.leading_exponents()))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StandardPair {
    pub face: Face,
    /// Zero on the face.
    pub root: Vec<i64>,
}

impl StandardPair {
    /// Does `u + N(e_i : i ∈ face)` contain v?
    pub fn covers(&self, v: &[i64]) -> bool {
        self.root
            .iter()
            .zip(v)
            .enumerate()
            .all(|(i, (r, x))| if self.face.contains(i) { true } else { r == x })
    }

    /// `S(self) ⊆ S(other)`: the face grows, and the roots agree off the larger face
    /// while `other`'s root is below on the difference.
    pub fn contained_in(&self, other: &StandardPair) -> bool {
        self.face.is_subset(other.face)
            && (0..self.root.len()).all(|i| {
                if other.face.contains(i) {
                    other.root[i] == 0
                } else {
                    other.root[i] == self.root[i]
                }
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    ideal: MonomialIdeal,
    pairs: Vec<StandardPair>,
}

impl Decomposition {
    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    /// Sorted by face, then root.
    pub fn pairs(&self) -> &[StandardPair] {
        &self.pairs
    }

    pub fn multiplicities(&self) -> BTreeMap<Face, usize> {
        let mut m = BTreeMap::new();
        for p in &self.pairs {
            *m.entry(p.face).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, tau: Face) -> usize {
        self.pairs.iter().filter(|p| p.face == tau).count()
    }

    pub fn arithmetic_degree(&self) -> usize {
        self.pairs.len()
    }

    /// Faces carrying at least one pair, sorted.
    pub fn associated_sets(&self) -> Vec<Face> {
        self.multiplicities().into_keys().collect()
    }

    pub fn covering_pairs(&self, v: &[i64]) -> Vec<&StandardPair> {
        self.pairs.iter().filter(|p| p.covers(v)).collect()
    }
}

/// All standard pairs of the ideal. Faces range over sets of size at most d, roots over
/// the box `u_i < max generator exponent`; a pair is kept when admissible and no single
/// coordinate can move into the face. Every resulting face must lie in Δ.
pub fn standard_pair_decomposition(
    ideal: &MonomialIdeal,
    delta: &RegularTriangulation,
) -> Result<Decomposition> {
    let n = ideal.ncols();
    if delta.ncols() != n {
        return Err(Error::Dimension(format!(
            "ideal has {n} variables, triangulation {} columns",
            delta.ncols()
        )));
    }
    let caps: Vec<i64> = (0..n).map(|i| ideal.max_exponent(i)).collect();
    let mut pairs = Vec::new();
    for k in 0..=delta.dim().min(n) {
        for tau in Face::combinations(n, k) {
            let free: Vec<usize> = tau.complement(n).indices();
            if free.iter().any(|&i| caps[i] == 0) {
                // that coordinate can always join the face
                continue;
            }
            if !ideal.is_admissible(&vec![0; n], tau) {
                continue;
            }
            let mut u = vec![0i64; n];
            roots(ideal, tau, &free, &caps, 0, &mut u, &mut |u| {
                if is_maximal(ideal, u, tau) {
                    pairs.push(StandardPair {
                        face: tau,
                        root: u.to_vec(),
                    });
                }
            });
        }
    }
    if let Some(p) = pairs.iter().find(|p| !delta.contains_face(p.face)) {
        return Err(Error::FaceViolation(format!(
            "standard pair face {} is not a face of the triangulation",
            p.face
        )));
    }
    pairs.sort();
    Ok(Decomposition {
        ideal: ideal.clone(),
        pairs,
    })
}

/// Admissible roots in the box, by depth-first search; admissibility is downward closed.
fn roots(
    ideal: &MonomialIdeal,
    tau: Face,
    free: &[usize],
    caps: &[i64],
    k: usize,
    u: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]),
) {
    if k == free.len() {
        visit(u);
        return;
    }
    let i = free[k];
    for v in 0..caps[i] {
        u[i] = v;
        if !ideal.is_admissible(u, tau) {
            break;
        }
        roots(ideal, tau, free, caps, k + 1, u, visit);
    }
    u[i] = 0;
}

fn is_maximal(ideal: &MonomialIdeal, u: &[i64], tau: Face) -> bool {
    let n = u.len();
    (0..n).filter(|&i| !tau.contains(i)).all(|i| {
        let mut w = u.to_vec();
        w[i] = 0;
        !ideal.is_admissible(&w, tau.insert(i))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedReport {
    pub associated: Vec<Face>,
    pub multiplicities: BTreeMap<Face, usize>,
    pub arithmetic_degree: usize,
    /// A longest chain of associated sets under inclusion, smallest first.
    pub max_chain: Vec<Face>,
    pub chain_length: usize,
    /// `min(d, 2^{n−d} − (n−d+1))`
    pub length_bound: usize,
}

pub fn length_bound(n: usize, d: usize) -> usize {
    let k = n - d;
    let pow = if k >= 32 { u64::MAX } else { 1u64 << k };
    let b = pow.saturating_sub(k as u64 + 1);
    (d as u64).min(b) as usize
}

/// Associated sets with the chain audit: every maximal face is associated, every
/// associated τ with `|τ| < d` sits under an associated τ ∪ {i}, and the longest chain
/// respects the length bound.
pub fn associated_report(d: &Decomposition, delta: &RegularTriangulation) -> Result<AssociatedReport> {
    let assoc = d.associated_sets();
    let dim = delta.dim();
    for &sigma in delta.maximal_faces() {
        if !assoc.contains(&sigma) {
            return Err(Error::ChainViolation(format!(
                "maximal face {sigma} is not associated"
            )));
        }
    }
    for &tau in &assoc {
        if tau.len() < dim
            && !assoc
                .iter()
                .any(|t| tau.is_subset(*t) && t.len() == tau.len() + 1)
        {
            return Err(Error::ChainViolation(format!(
                "associated set {tau} has no associated cover"
            )));
        }
    }
    // longest chain starting at each set, largest sets first
    let mut order: Vec<usize> = (0..assoc.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(assoc[i].len()));
    let mut best: Vec<(usize, Option<usize>)> = vec![(0, None); assoc.len()];
    for &i in &order {
        for j in 0..assoc.len() {
            if assoc[j].len() > assoc[i].len() && assoc[i].is_subset(assoc[j]) {
                let cand = best[j].0 + 1;
                // ties go to the later set, which prefers high column indices
                if cand >= best[i].0 {
                    best[i] = (cand, Some(j));
                }
            }
        }
    }
    let start = (0..assoc.len()).max_by_key(|&i| (best[i].0, std::cmp::Reverse(i)));
    let mut chain = Vec::new();
    let mut cur = start;
    while let Some(i) = cur {
        chain.push(assoc[i]);
        cur = best[i].1;
    }
    let chain_length = chain.len().saturating_sub(1);
    let bound = length_bound(delta.ncols(), dim);
    if chain_length > bound {
        return Err(Error::LengthViolation {
            length: chain_length,
            bound,
        });
    }
    Ok(AssociatedReport {
        multiplicities: d.multiplicities(),
        arithmetic_degree: d.arithmetic_degree(),
        associated: assoc,
        max_chain: chain,
        chain_length,
        length_bound: bound,
    })
}

/// Every pair sits on a maximal face.
pub fn is_gomory_family(d: &Decomposition, delta: &RegularTriangulation) -> bool {
    d.pairs().iter().all(|p| delta.is_maximal(p.face))
}

/// Faces τ whose group relaxation solves the program with optimum v: subsets of the
/// faces of pairs covering v.
pub fn relaxations_solving(v: &[i64], d: &Decomposition) -> Result<Vec<Face>> {
    if d.ideal().contains(v) {
        return Err(Error::NotOptimal);
    }
    let mut out: Vec<Face> = d
        .covering_pairs(v)
        .iter()
        .flat_map(|p| p.face.subsets())
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Maximal faces τ among `relaxations_solving`.
pub fn maximal_solving_faces(v: &[i64], d: &Decomposition) -> Result<Vec<Face>> {
    let all = relaxations_solving(v, d)?;
    Ok(all
        .iter()
        .copied()
        .filter(|t| !all.iter().any(|s| s != t && t.is_subset(*s)))
        .collect())
}

/// Lower bound on the arithmetic degree: the normalized volumes of the maximal cells.
pub fn normalized_volume_sum(a: &crate::IntMatrix, delta: &RegularTriangulation) -> BigInt {
    let g = crate::gcd_maximal_minors(a);
    delta
        .maximal_faces()
        .iter()
        .map(|&s| crate::face_determinant(a, s).map(|x| x / &g).unwrap_or_default())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{toric_groebner, CostOrder};
    use crate::triangulation::regular_subdivision;
    use crate::IntMatrix;

    fn knapsack() -> (IntMatrix, Decomposition, RegularTriangulation) {
        let a = IntMatrix::from_i64(&[vec![2, 5, 8]]).unwrap();
        let c = vec![10000, 100, 1];
        let gb = toric_groebner(&a, &CostOrder::new(c.clone())).unwrap();
        let delta = regular_subdivision(&a, &c);
        let ideal = initial_ideal(&gb).unwrap();
        let d = standard_pair_decomposition(&ideal, &delta).unwrap();
        (a, d, delta)
    }

    #[test]
    fn knapsack_pairs() {
        let (_, d, delta) = knapsack();
        let empty: Vec<Vec<i64>> = d
            .pairs()
            .iter()
            .filter(|p| p.face.is_empty())
            .map(|p| p.root.clone())
            .collect();
        let mut expect_empty = vec![
            vec![1, 0, 0],
            vec![2, 0, 0],
            vec![3, 0, 0],
            vec![1, 1, 0],
            vec![2, 1, 0],
            vec![3, 1, 0],
            vec![1, 2, 0],
            vec![2, 2, 0],
            vec![1, 3, 0],
            vec![2, 3, 0],
            vec![1, 4, 0],
            vec![1, 5, 0],
        ];
        expect_empty.sort();
        assert_eq!(empty, expect_empty);
        let three = Face::from_indices([2]);
        let on_three: Vec<Vec<i64>> = d
            .pairs()
            .iter()
            .filter(|p| p.face == three)
            .map(|p| p.root.clone())
            .collect();
        assert_eq!(on_three, (0..8).map(|i| vec![0, i, 0]).collect::<Vec<_>>());
        assert_eq!(d.arithmetic_degree(), 20);
        assert!(!is_gomory_family(&d, &delta));
        let r = associated_report(&d, &delta).unwrap();
        assert_eq!(r.associated, vec![Face::EMPTY, three]);
        assert_eq!(r.chain_length, 1);
        assert_eq!(r.length_bound, 1);
    }

    #[test]
    fn knapsack_solving_faces() {
        let (_, d, _) = knapsack();
        assert_eq!(relaxations_solving(&[1, 0, 0], &d).unwrap(), vec![Face::EMPTY]);
        assert_eq!(
            relaxations_solving(&[0, 3, 5], &d).unwrap(),
            vec![Face::EMPTY, Face::from_indices([2])]
        );
        assert!(matches!(relaxations_solving(&[4, 0, 0], &d), Err(Error::NotOptimal)));
    }

    #[test]
    fn zero_ideal_and_containment() {
        let delta = RegularTriangulation::from_faces(
            &IntMatrix::from_i64(&[vec![1]]).unwrap(),
            &[Face::from_indices([0])],
        )
        .unwrap();
        let d = standard_pair_decomposition(&MonomialIdeal::new(1, vec![]), &delta).unwrap();
        assert_eq!(
            d.pairs(),
            &[StandardPair {
                face: Face::from_indices([0]),
                root: vec![0]
            }]
        );
        let small = StandardPair {
            face: Face::from_indices([0]),
            root: vec![0, 2, 1],
        };
        let big = StandardPair {
            face: Face::from_indices([0, 1]),
            root: vec![0, 0, 1],
        };
        assert!(small.contained_in(&big));
        assert!(!big.contained_in(&small));
    }

    #[test]
    fn length_bounds() {
        assert_eq!(length_bound(3, 1), 1);
        assert_eq!(length_bound(6, 3), 3);
        assert_eq!(length_bound(10, 7), 4);
        assert_eq!(length_bound(5, 3), 1);
        assert_eq!(length_bound(2, 1), 0);
    }
}

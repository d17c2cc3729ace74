//! Reduced Gröbner bases of the toric ideal `I_A`, stored as lattice vectors.
//!
//! A binomial `x^{v+} − x^{v−}` is kept as the vector `v = v+ − v−`; common monomial
//! factors are cancelled implicitly, which is harmless because `I_A` is saturated.
//! Completion starts from a lattice basis, saturates by one variable at a time under a
//! reverse lexicographic order with that variable last, then completes under the
//! target cost order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::fiber;
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::matrix::{kernel_lattice_basis, IntMatrix, LatticeBasis};
use crate::{Error, Result};

/// Cost vector refined by further weight vectors, then by lexicographic order with
/// `x_1 > x_2 > … > x_n`. Only compared within fibers of A, where a positive grading
/// makes it a term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostOrder {
    cost: Vec<i64>,
    refinements: Vec<Vec<i64>>,
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

impl CostOrder {
    pub fn new(cost: Vec<i64>) -> CostOrder {
        CostOrder {
            cost,
            refinements: Vec::new(),
        }
    }

    pub fn with_refinements(cost: Vec<i64>, refinements: Vec<Vec<i64>>) -> CostOrder {
        CostOrder { cost, refinements }
    }

    pub fn cost(&self) -> &[i64] {
        &self.cost
    }

    pub fn refinements(&self) -> &[Vec<i64>] {
        &self.refinements
    }

    pub fn value(&self, x: &[i64]) -> i128 {
        dot(&self.cost, x)
    }

    /// Compares `v+` with `v−`.
    pub fn sign(&self, v: &[i64]) -> Ordering {
        for level in std::iter::once(&self.cost).chain(&self.refinements) {
            match dot(level, v).cmp(&0) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        v.iter()
            .find(|&&x| x != 0)
            .map_or(Ordering::Equal, |&x| x.cmp(&0))
    }

    pub fn compare(&self, x: &[i64], y: &[i64]) -> Ordering {
        let v: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.sign(&v)
    }
}

#[derive(Clone, Copy)]
enum Working<'a> {
    Cost(&'a CostOrder),
    /// Graded reverse lexicographic order in which variable j is the smallest.
    RevLexLast(usize),
}

impl Working<'_> {
    fn sign(&self, v: &[i64]) -> Ordering {
        match *self {
            Working::Cost(o) => o.sign(v),
            Working::RevLexLast(j) => {
                let last = std::iter::once(j)
                    .chain((0..v.len()).rev().filter(|&i| i != j))
                    .map(|i| v[i])
                    .find(|&x| x != 0);
                last.map_or(Ordering::Equal, |x| 0.cmp(&x))
            }
        }
    }
}

/// `x^{plus} − x^{minus}` with disjoint supports, `plus` the leading term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Binomial {
    pub plus: Vec<i64>,
    pub minus: Vec<i64>,
}

impl Binomial {
    pub fn from_vector(v: &[i64]) -> Binomial {
        Binomial {
            plus: v.iter().map(|&x| x.max(0)).collect(),
            minus: v.iter().map(|&x| (-x).max(0)).collect(),
        }
    }

    pub fn vector(&self) -> Vec<i64> {
        self.plus.iter().zip(&self.minus).map(|(p, m)| p - m).collect()
    }
}

#[derive(Clone, Debug)]
struct Elem {
    v: Vec<i64>,
    pos: u64,
}

impl Elem {
    fn new(v: Vec<i64>) -> Elem {
        let pos = v
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .fold(0u64, |m, (i, _)| m | 1 << i);
        Elem { v, pos }
    }

    /// Does the leading term divide `x^{u+}`, where u+ is given with its support mask?
    fn lead_divides(&self, u: &[i64], mask: u64) -> bool {
        self.pos & !mask == 0 && self.v.iter().zip(u).all(|(&g, &x)| g <= 0 || g <= x)
    }
}

fn positive_mask(v: &[i64]) -> u64 {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .fold(0u64, |m, (i, _)| m | 1 << i)
}

fn orient(v: &mut [i64], order: Working) -> bool {
    match order.sign(v) {
        Ordering::Equal => false,
        Ordering::Less => {
            v.iter_mut().for_each(|x| *x = -*x);
            true
        }
        Ordering::Greater => true,
    }
}

/// Reduce the leading term of `v` by `basis` until irreducible. Returns `None` on zero.
fn top_reduce(mut v: Vec<i64>, basis: &[Elem], order: Working) -> Option<Vec<i64>> {
    loop {
        if !orient(&mut v, order) {
            return None;
        }
        let mask = positive_mask(&v);
        match basis.iter().find(|g| g.lead_divides(&v, mask)) {
            Some(g) => v.iter_mut().zip(&g.v).for_each(|(x, y)| *x -= y),
            None => return Some(v),
        }
    }
}

fn lcm_degree(a: &[i64], b: &[i64], grading: &[i64]) -> i64 {
    a.iter()
        .zip(b)
        .zip(grading)
        .map(|((&x, &y), &w)| x.max(y).max(0) * w)
        .sum()
}

/// Buchberger completion of the binomial ideal generated by `gens` under `order`,
/// followed by removal of elements with redundant leading terms.
fn complete(gens: Vec<Vec<i64>>, order: Working, grading: &[i64]) -> Vec<Elem> {
    let mut basis: Vec<Elem> = Vec::new();
    let mut pending: BTreeSet<(i64, usize, usize)> = BTreeSet::new();
    let mut open: BTreeSet<(usize, usize)> = BTreeSet::new();
    let push = |v: Vec<i64>,
                    basis: &mut Vec<Elem>,
                    pending: &mut BTreeSet<(i64, usize, usize)>,
                    open: &mut BTreeSet<(usize, usize)>| {
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pending.insert((lcm_degree(&g.v, &v, grading), i, k));
            open.insert((i, k));
        }
        basis.push(Elem::new(v));
    };
    for g in gens {
        if let Some(v) = top_reduce(g, &basis, order) {
            push(v, &mut basis, &mut pending, &mut open);
        }
    }
    while let Some(key) = pending.pop_first() {
        let (_, i, j) = key;
        open.remove(&(i, j));
        let (gi, gj) = (&basis[i], &basis[j]);
        if gi.pos & gj.pos == 0 {
            continue;
        }
        let lcm: Vec<i64> = gi.v.iter().zip(&gj.v).map(|(&a, &b)| a.max(b).max(0)).collect();
        let lcm_mask = gi.pos | gj.pos;
        let pair_open = |a: usize, b: usize| open.contains(&(a.min(b), a.max(b)));
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead_divides(&lcm, lcm_mask)
                && !pair_open(i, k)
                && !pair_open(j, k)
        });
        if chain {
            continue;
        }
        let s: Vec<i64> = gj.v.iter().zip(&gi.v).map(|(a, b)| a - b).collect();
        if let Some(v) = top_reduce(s, &basis, order) {
            push(v, &mut basis, &mut pending, &mut open);
        }
    }
    minimalize(basis)
}

/// Keep one element per minimal leading term.
fn minimalize(basis: Vec<Elem>) -> Vec<Elem> {
    let mut keep: Vec<Elem> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let mask = g.pos;
        let plus: Vec<i64> = g.v.iter().map(|&x| x.max(0)).collect();
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != i && h.lead_divides(&plus, mask) && (!same_lead(h, g) || k < i)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep
}

fn same_lead(a: &Elem, b: &Elem) -> bool {
    a.v.iter().zip(&b.v).all(|(&x, &y)| x.max(0) == y.max(0))
}

/// Tail-reduce a minimal basis to the reduced one.
fn tail_reduce(basis: &mut [Elem]) -> Result<()> {
    for i in 0..basis.len() {
        let lead: Vec<i64> = basis[i].v.iter().map(|&x| x.max(0)).collect();
        loop {
            let minus: Vec<i64> = basis[i].v.iter().map(|&x| (-x).max(0)).collect();
            let mask = positive_mask(&minus);
            let Some(h) = (0..basis.len()).find(|&k| k != i && basis[k].lead_divides(&minus, mask))
            else {
                break;
            };
            let hv = basis[h].v.clone();
            let new: Vec<i64> = basis[i].v.iter().zip(&hv).map(|(a, b)| a + b).collect();
            if new.iter().zip(&lead).any(|(&x, &l)| x.max(0) != l) {
                return Err(Error::Internal("tail reduction changed a leading term".into()));
            }
            basis[i] = Elem::new(new);
        }
    }
    Ok(())
}

/// The reduced Gröbner basis of `I_A` under a cost order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    n: usize,
    order: CostOrder,
    elements: Vec<Binomial>,
    vectors: Vec<Vec<i64>>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn order(&self) -> &CostOrder {
        &self.order
    }

    pub fn ncols(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Lattice vectors `plus − minus`, in element order.
    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    /// Exponents of the leading terms.
    pub fn leading_exponents(&self) -> Vec<Vec<i64>> {
        self.elements.iter().map(|b| b.plus.clone()).collect()
    }

    /// Index of the lowest element whose leading term divides `x^u`.
    pub fn reducer(&self, u: &[i64]) -> Option<usize> {
        self.elements
            .iter()
            .position(|b| b.plus.iter().zip(u).all(|(p, x)| p <= x))
    }

    /// Normal form of `x^u`, reducing by the lowest applicable element each step.
    pub fn normal_form(&self, u: &[i64]) -> Vec<i64> {
        let mut u = u.to_vec();
        while let Some(k) = self.reducer(&u) {
            u.iter_mut().zip(&self.vectors[k]).for_each(|(x, v)| *x -= v);
        }
        u
    }

    /// First element whose two terms have equal cost, if any.
    pub fn tied_element(&self) -> Option<&Binomial> {
        self.elements
            .iter()
            .zip(&self.vectors)
            .find(|(_, v)| self.order.value(v) == 0)
            .map(|(b, _)| b)
    }
}

/// Reduced Gröbner basis of `I_A`, starting from the computed kernel lattice basis.
pub fn toric_groebner(a: &IntMatrix, order: &CostOrder) -> Result<GroebnerBasis> {
    let basis = kernel_lattice_basis(a)?;
    toric_groebner_with_lattice(a, &basis, order)
}

/// Reduced Gröbner basis of `I_A`, starting from a given basis of the kernel lattice.
pub fn toric_groebner_with_lattice(
    a: &IntMatrix,
    lattice: &LatticeBasis,
    order: &CostOrder,
) -> Result<GroebnerBasis> {
    let n = a.ncols();
    if order.cost.len() != n || order.refinements.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension(format!("cost vectors must have length {n}")));
    }
    let grading = a.grading();
    let mut gens: Vec<Vec<i64>> = lattice.columns_i64().to_vec();
    if !gens.is_empty() {
        for j in 0..n {
            gens = complete(gens, Working::RevLexLast(j), grading)
                .into_iter()
                .map(|e| e.v)
                .collect();
        }
    }
    let mut basis = complete(gens, Working::Cost(order), grading);
    tail_reduce(&mut basis)?;
    let mut pairs: Vec<(Binomial, Vec<i64>)> = basis
        .into_iter()
        .map(|e| (Binomial::from_vector(&e.v), e.v))
        .collect();
    pairs.sort();
    let (elements, vectors) = pairs.into_iter().unzip();
    Ok(GroebnerBasis {
        n,
        order: order.clone(),
        elements,
        vectors,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Genericity {
    pub generic: bool,
    /// An element of the reduced basis whose two terms have equal cost.
    pub witness: Option<Binomial>,
}

/// Is `in_c(I_A)` a monomial ideal? Decided on the reduced basis under the lexicographic
/// refinement of c.
pub fn is_generic(a: &IntMatrix, cost: &[i64]) -> Result<Genericity> {
    let gb = toric_groebner(a, &CostOrder::new(cost.to_vec()))?;
    Ok(genericity(&gb))
}

pub fn genericity(gb: &GroebnerBasis) -> Genericity {
    let witness = gb.tied_element().cloned();
    Genericity {
        generic: witness.is_none(),
        witness,
    }
}

/// Optimal point of `min c·x, Ax = b, x ∈ N^n`: a fiber point reduced to normal form.
pub fn solve_ip(a: &IntMatrix, gb: &GroebnerBasis, b: &[i64]) -> Result<Vec<i64>> {
    let u = fiber::first_fiber_point(a, b)?.ok_or(Error::Infeasible)?;
    Ok(gb.normal_form(&u))
}

/// A cost vector w with `w·v > 0` for every element of the reduced basis, so that the
/// weight order of w alone has the same initial ideal. Returns the cost itself when it
/// already separates every element; otherwise the primitive integer vector of least
/// ℓ1-norm found by LP.
pub fn realize_generic(gb: &GroebnerBasis) -> Result<Vec<i64>> {
    if gb.tied_element().is_none() {
        return Ok(gb.order.cost.clone());
    }
    let n = gb.n;
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    // w = p − m with p, m ≥ 0; minimize Σ(p + m)
    let mut lp = LinearProgram::nonnegative(2 * n);
    for v in &gb.vectors {
        let row: Vec<BigRational> = v.iter().map(|&x| q(x)).chain(v.iter().map(|&x| q(-x))).collect();
        lp.add(row, Relation::Ge, q(1));
    }
    let LpOutcome::Optimal { point, .. } = lp.minimize(&vec![q(1); 2 * n]) else {
        return Err(Error::Internal("no weight vector realizes the term order".into()));
    };
    let w: Vec<BigRational> = (0..n).map(|i| &point[i] - &point[n + i]).collect();
    let den = w.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = w.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let out = ints
        .iter()
        .map(|x| (x / &g).to_i64().ok_or(Error::Overflow))
        .collect::<Result<Vec<i64>>>()?;
    debug_assert!(gb.vectors.iter().all(|v| dot(&out, v).is_positive()));
    Ok(out)
}
